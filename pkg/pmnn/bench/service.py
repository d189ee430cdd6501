from __future__ import annotations

import statistics
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np
import structlog

from pmnn.bench.output import render_csv, write_text
from pmnn.bench.schemas import (
    ConvergenceFunction,
    ConvergenceStudy,
    FdmRequest,
    FdmSummary,
    RunConfig,
    TableId,
    TableReport,
    WeightsResponse,
)
from pmnn.bench.studies import convergence_study
from pmnn.bench.tables import TableCell, TableSpec, get_table
from pmnn.caputo.models import FractionalOrder
from pmnn.caputo.weights import l1_weights, l2sigma_weight_row
from pmnn.config import settings
from pmnn.exceptions import InvalidArgumentError
from pmnn.fdm.models import GridSolution
from pmnn.fdm.service import fdm_solve
from pmnn.logging_config import run_context
from pmnn.neural.models import NetworkParams
from pmnn.neural.snapshot import save_params
from pmnn.problems.examples import build_problem
from pmnn.solver.collocation import evaluation_points
from pmnn.solver.fields import exact_field
from pmnn.solver.models import FractionalIVP, Scheme
from pmnn.solver.schemas import SolveReport
from pmnn.solver.service import predict, train

logger = structlog.get_logger()

Trainer = Callable[..., tuple[NetworkParams, SolveReport]]

_AXIS_NAMES = ("x", "y")


def prediction_csv(problem: FractionalIVP, params: NetworkParams) -> str:
    """t[, x[, y]], u_exact, u_pred, abs_err on the evaluation grid."""
    points = evaluation_points(problem)
    predicted = predict(params, points)
    exact = predict(exact_field(problem), points)
    dim = problem.spatial_dim
    header = ["t", *_AXIS_NAMES[:dim], "u_exact", "u_pred", "abs_err"]
    columns = [points[:, dim], *(points[:, axis] for axis in range(dim))]
    table = np.column_stack([*columns, exact, predicted, np.abs(predicted - exact)])
    return render_csv(header, table.tolist())


class BenchService:
    def __init__(self, trainer: Trainer = train, workers: int | None = None) -> None:
        self._trainer = trainer
        self._workers = workers or settings.table_workers

    def weights(self, alpha: float, scheme: Scheme, n: int) -> WeightsResponse:
        order = FractionalOrder.of(alpha)
        if Scheme(scheme) is Scheme.l1:
            values = l1_weights(order, n).a
        else:
            values = l2sigma_weight_row(order, n).c
        return WeightsResponse(alpha=order.alpha, scheme=scheme, n=n, weights=values.tolist())

    def convergence(
        self,
        scheme: Scheme,
        alpha: float,
        function: ConvergenceFunction,
        steps: Sequence[int],
    ) -> ConvergenceStudy:
        return convergence_study(scheme, alpha, function, steps)

    def solve(self, config: RunConfig) -> tuple[NetworkParams, SolveReport]:
        problem = build_problem(config.example, config.alpha)
        params, report = self._trainer(
            problem,
            config.scheme,
            nt=config.nt,
            nx=config.nx if problem.spatial_dim else None,
            seed=config.seed,
            config=config.lbfgs_config(),
            network=config.network_spec(problem.input_dim),
        )
        effective = {**report.config, "run": config.model_dump(mode="json")}
        return params, report.model_copy(update={"config": effective})

    def export_solve(self, config: RunConfig, params: NetworkParams, report: SolveReport) -> None:
        if config.out is not None:
            write_text(config.out, report.model_dump_json(indent=2) + "\n")
        if config.save_params is not None:
            save_params(config.save_params, params)
        if config.dump_prediction is not None:
            problem = build_problem(config.example, config.alpha)
            write_text(config.dump_prediction, prediction_csv(problem, params))
        logger.info(
            "solve_exported",
            out=str(config.out) if config.out else None,
            save_params=str(config.save_params) if config.save_params else None,
            dump_prediction=str(config.dump_prediction) if config.dump_prediction else None,
        )

    def table(
        self,
        table_id: TableId | str,
        seeds: Sequence[int] = (),
        max_iters: int | None = None,
        workers: int | None = None,
    ) -> TableReport:
        spec = get_table(table_id)
        seeds = list(seeds) or [settings.default_seed]
        if len(set(seeds)) != len(seeds):
            raise InvalidArgumentError(f"Seeds must be distinct, got {seeds}")
        jobs = [(cell, seed) for cell in spec.cells() for seed in seeds]

        def run(job: tuple[TableCell, int]) -> SolveReport:
            cell, seed = job
            config = RunConfig(
                example=spec.example,
                alpha=cell.alpha,
                scheme=cell.scheme,
                nt=cell.nt,
                nx=cell.nx or RunConfig.model_fields["nx"].default,
                seed=seed,
                max_iters=max_iters,
            )
            with run_context(table=spec.table_id.value):
                _, report = self.solve(config)
            logger.info(
                "table_cell_done",
                table=spec.table_id.value,
                nt=cell.nt,
                nx=cell.nx,
                alpha=cell.alpha,
                scheme=cell.scheme.value,
                seed=seed,
                error=report.l2_relative_error,
            )
            return report

        logger.info("table_started", table=spec.table_id.value, cells=len(jobs), seeds=seeds)
        with ThreadPoolExecutor(max_workers=workers or self._workers) as pool:
            reports = list(pool.map(run, jobs))

        header = _table_header(seeds)
        rows = []
        for index, cell in enumerate(spec.cells()):
            cell_reports = reports[index * len(seeds) : (index + 1) * len(seeds)]
            rows.append(_table_row(spec, cell, seeds, cell_reports))
        return TableReport(table=spec.table_id, seeds=seeds, header=header, rows=rows)

    def fdm(self, request: FdmRequest) -> tuple[GridSolution, FdmSummary]:
        problem = build_problem(request.example, request.alpha)
        nx = request.nx if problem.spatial_dim else None
        started = time.perf_counter()
        solution = fdm_solve(problem, request.nt - 1, nx, request.scheme)
        wall_time = time.perf_counter() - started
        summary = FdmSummary(
            problem=problem.name,
            scheme=request.scheme,
            alpha=problem.alpha.alpha,
            nt=request.nt,
            nx=nx,
            max_abs_error=solution.max_abs_error(problem),
            error_at_final=solution.error_at_final(problem),
            wall_time_s=wall_time,
        )
        return solution, summary


def _table_header(seeds: Sequence[int]) -> list[str]:
    header = ["table", "example", "nt", "nx", "alpha", "scheme"]
    header += [f"error_seed_{seed}" for seed in seeds]
    if len(seeds) > 1:
        header.append("median_error")
    header += ["reference_error", "iterations", "wall_time_s"]
    return header


def _table_row(
    spec: TableSpec, cell: TableCell, seeds: Sequence[int], reports: Sequence[SolveReport]
) -> dict[str, Any]:
    errors = [report.l2_relative_error for report in reports]
    row: dict[str, Any] = {
        "table": spec.table_id.value,
        "example": spec.example.number,
        "nt": cell.nt,
        "nx": cell.nx,
        "alpha": cell.alpha,
        "scheme": cell.scheme.value,
    }
    row.update({f"error_seed_{seed}": error for seed, error in zip(seeds, errors, strict=True)})
    if len(seeds) > 1:
        row["median_error"] = statistics.median(e for e in errors if e is not None)
    row["reference_error"] = spec.reference_error(cell)
    row["iterations"] = int(statistics.median(report.iterations for report in reports))
    row["wall_time_s"] = sum(report.wall_time_s for report in reports)
    return row


def table_csv(report: TableReport) -> str:
    rows = ([row.get(key) for key in report.header] for row in report.rows)
    return render_csv(report.header, rows)
