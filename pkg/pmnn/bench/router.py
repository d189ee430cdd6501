from typing import Annotated

from fastapi import APIRouter, Depends, Query

from pmnn.bench.schemas import (
    ConvergenceFunction,
    ConvergenceStudy,
    FdmRequest,
    FdmSummary,
    RunConfig,
    WeightsResponse,
)
from pmnn.bench.service import BenchService
from pmnn.dependencies import get_bench_service
from pmnn.solver.models import Scheme
from pmnn.solver.schemas import SolveReport

router = APIRouter()


BenchServiceDep = Annotated[BenchService, Depends(get_bench_service)]


@router.get("/weights", response_model=WeightsResponse)
def get_weights(
    service: BenchServiceDep,
    alpha: float,
    scheme: Scheme = Scheme.l1,
    n: int = Query(default=4, ge=1),
) -> WeightsResponse:
    return service.weights(alpha, scheme, n)


@router.get("/convergence", response_model=ConvergenceStudy)
def get_convergence(
    service: BenchServiceDep,
    alpha: float,
    scheme: Scheme = Scheme.l1,
    function: ConvergenceFunction = ConvergenceFunction.t3,
    ns: Annotated[list[int] | None, Query()] = None,
) -> ConvergenceStudy:
    return service.convergence(scheme, alpha, function, ns or [64, 128, 256, 512])


@router.post("/solve", response_model=SolveReport)
def post_solve(config: RunConfig, service: BenchServiceDep) -> SolveReport:
    # files are only written by the command line
    config = config.model_copy(update={"out": None, "dump_prediction": None, "save_params": None})
    _, report = service.solve(config)
    return report


@router.post("/fdm", response_model=FdmSummary)
def post_fdm(request: FdmRequest, service: BenchServiceDep) -> FdmSummary:
    _, summary = service.fdm(request)
    return summary
