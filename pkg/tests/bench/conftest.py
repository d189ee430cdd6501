import pytest

from pmnn.bench.service import BenchService
from pmnn.neural import LbfgsStatus, init_params
from pmnn.solver import SolveReport


class FakeTrainer:
    """Stands in for network training; the error encodes the seed and node count."""

    def __init__(self) -> None:
        self.calls: list[dict] = []

    def __call__(self, problem, scheme, nt, nx=None, seed=None, config=None, network=None):
        self.calls.append({"nt": nt, "nx": nx, "seed": seed, "config": config})
        report = SolveReport(
            problem=problem.name,
            scheme=scheme,
            alpha=problem.alpha.alpha,
            nt=nt,
            nx=nx,
            seed=seed,
            status=LbfgsStatus.converged,
            iterations=10 + seed,
            function_evaluations=20 + seed,
            wall_time_s=0.5,
            loss_f=1e-6,
            loss_ic=0.0,
            loss_bc=0.0,
            loss_total=1e-6,
            l2_relative_error=1e-3 * (seed + 1) + 1e-6 * nt,
            loss_history=[1.0, 1e-6],
            loss_f_history=[0.9, 1e-6],
            loss_ic_history=[0.1, 0.0],
            loss_bc_history=[0.0, 0.0],
            config={
                "network": network.model_dump(mode="json"),
                "optimizer": config.model_dump(mode="json"),
            },
        )
        return init_params(network, seed), report


@pytest.fixture
def fake_trainer() -> FakeTrainer:
    return FakeTrainer()


@pytest.fixture
def bench_service(fake_trainer) -> BenchService:
    return BenchService(trainer=fake_trainer)
