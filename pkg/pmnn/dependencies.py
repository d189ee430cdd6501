from pmnn.bench.service import BenchService


def get_bench_service() -> BenchService:
    return BenchService()
