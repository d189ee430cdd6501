from __future__ import annotations

import math
import time
from collections.abc import Sequence
from dataclasses import asdict

import numpy as np
import structlog
import torch

from pmnn.caputo.models import L1Weights, L2SigmaWeightRow, TimeGrid
from pmnn.caputo.weights import caputo_prefactor
from pmnn.config import settings
from pmnn.exceptions import InvalidArgumentError, NumericalError, ZeroNormError
from pmnn.logging_config import run_context
from pmnn.neural.autodiff import evaluate_objective
from pmnn.neural.lbfgs import lbfgs_minimize
from pmnn.neural.models import NetworkParams
from pmnn.neural.network import DTYPE, NetworkField, init_params
from pmnn.neural.schemas import LbfgsConfig, LbfgsStatus, NetworkSpec
from pmnn.solver.collocation import build_collocation, evaluation_points
from pmnn.solver.fields import SolutionField, apply_operator, as_field, exact_field
from pmnn.solver.models import CollocationSet, FractionalIVP, LossBreakdown, Scheme
from pmnn.solver.schemas import SolveReport
from pmnn.solver.schemes import TemporalScheme, make_scheme

logger = structlog.get_logger()

_EVALUATION_BATCH = 65_536


def _space_time(space: np.ndarray, times: np.ndarray) -> torch.Tensor:
    columns = np.column_stack([np.asarray(space, dtype=np.float64), np.asarray(times).ravel()])
    return torch.as_tensor(columns, dtype=DTYPE)


def _point_space(problem: FractionalIVP, space: Sequence[float] | np.ndarray) -> np.ndarray:
    values = np.asarray(space, dtype=np.float64).ravel()
    if values.size != problem.spatial_dim:
        raise InvalidArgumentError(
            f"Problem '{problem.name}' takes {problem.spatial_dim} space coordinates, "
            f"got {values.size}"
        )
    return values.reshape(1, -1)


def _history_values(field: SolutionField, space: np.ndarray, times: np.ndarray) -> np.ndarray:
    points = _space_time(np.repeat(space, times.size, axis=0), times)
    return field.values(points).numpy()


def _drive(problem: FractionalIVP, field: SolutionField, space: np.ndarray, t: float) -> float:
    """(L u + f) at one space-time point."""
    points = _space_time(space, np.array([t]))
    operator = apply_operator(problem, field, points)
    forcing = problem.forcing(points[:, : problem.spatial_dim], points[:, problem.spatial_dim])
    return float(operator[0] + forcing[0])


def l1_target(
    problem: FractionalIVP,
    params: NetworkParams | SolutionField,
    space: Sequence[float] | np.ndarray,
    n: int,
    weights: L1Weights,
    tau: float,
) -> float:
    if not 1 <= n <= weights.count:
        raise InvalidArgumentError(f"Step {n} is outside [1, {weights.count}]")
    field = as_field(params)
    point = _point_space(problem, space)
    a = weights.a
    with torch.no_grad():
        history = _history_values(field, point, np.arange(n) * tau)
        drive = _drive(problem, field, point, n * tau)
    k = np.arange(1, n)
    target = caputo_prefactor(weights.alpha, tau) / a[0] * drive
    target += float(np.sum((a[n - k - 1] - a[n - k]) / a[0] * history[k]))
    target += a[n - 1] / a[0] * history[0]
    return float(target)


def l2sigma_target(
    problem: FractionalIVP,
    params: NetworkParams | SolutionField,
    space: Sequence[float] | np.ndarray,
    n: int,
    row: L2SigmaWeightRow,
    tau: float,
) -> float:
    if row.n != n:
        raise InvalidArgumentError(f"Weight row {row.n} does not belong to step {n}")
    field = as_field(params)
    point = _point_space(problem, space)
    c = row.c
    with torch.no_grad():
        history = _history_values(field, point, np.arange(n) * tau)
        drive = _drive(problem, field, point, (n - 1 + row.sigma) * tau)
    k = np.arange(1, n)
    target = caputo_prefactor(row.alpha, tau) / c[0] * drive
    target += float(np.sum(c[k] / c[0] * (history[n - k - 1] - history[n - k])))
    target += history[n - 1]
    return float(target)


def _canonical_order(space: np.ndarray, times: np.ndarray) -> np.ndarray:
    keys = np.column_stack([space, times]).T
    return np.lexsort(keys[::-1])


def _unique_nodes(space: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if space.shape[1] == 0:
        return space[:1], np.zeros(space.shape[0], dtype=np.intp)
    nodes, inverse = np.unique(space, axis=0, return_inverse=True)
    return nodes, inverse.ravel()


class LossAssembly:
    """Precomputed point sets and scheme matrices for one (problem, scheme, grid).

    Interior points are grouped by spatial node, so every target is built from one
    row of network values on t_0..t_N. Summation runs over sorted points and the
    loss does not depend on the order of the collocation arrays.
    """

    def __init__(
        self,
        problem: FractionalIVP,
        scheme: Scheme,
        collocation: CollocationSet,
        grid: TimeGrid,
    ) -> None:
        if collocation.n_f == 0:
            raise InvalidArgumentError("The interior collocation set is empty")
        steps = np.asarray(collocation.interior_steps, dtype=np.intp)
        if steps.min() < 1 or steps.max() > grid.steps:
            raise InvalidArgumentError(f"Interior time indices must lie in [1, {grid.steps}]")
        if collocation.interior_space.shape[1] != problem.spatial_dim:
            raise InvalidArgumentError("Collocation points do not match the problem dimension")

        self.problem = problem
        self.grid = grid
        self.collocation = collocation
        self.scheme: TemporalScheme = make_scheme(Scheme(scheme), problem.alpha, grid)

        nodes, inverse = _unique_nodes(collocation.interior_space)
        n_nodes, n_steps = nodes.shape[0], grid.steps
        counts = np.zeros((n_nodes, n_steps))
        np.add.at(counts, (inverse, steps - 1), 1.0)
        self._shape = (n_nodes, n_steps)
        self._counts = torch.as_tensor(counts, dtype=DTYPE)

        self._grid_points = _space_time(
            np.repeat(nodes, n_steps + 1, axis=0), np.tile(grid.nodes, n_nodes)
        )
        operator_space = np.repeat(nodes, n_steps, axis=0)
        operator_times = np.tile(self.scheme.operator_times, n_nodes)
        self._operator_points = _space_time(operator_space, operator_times)
        forcing = problem.sample(problem.forcing, operator_space, operator_times)
        self._forcing = torch.as_tensor(forcing, dtype=DTYPE).view(n_nodes, n_steps)
        self._weights = torch.as_tensor(self.scheme.operator_weights, dtype=DTYPE)
        self._history = torch.as_tensor(self.scheme.history_matrix, dtype=DTYPE)

        initial_times = np.zeros(collocation.n_ic)
        order = _canonical_order(collocation.initial_space, initial_times)
        self._initial_points = _space_time(collocation.initial_space[order], initial_times)
        self._initial_values = torch.as_tensor(
            problem.sample_initial(collocation.initial_space[order]), dtype=DTYPE
        )

        order = _canonical_order(collocation.boundary_space, collocation.boundary_times)
        boundary_space = collocation.boundary_space[order]
        boundary_times = collocation.boundary_times[order]
        self._boundary_points = _space_time(boundary_space, boundary_times)
        boundary_values = (
            problem.sample(problem.boundary, boundary_space, boundary_times)
            if collocation.n_bc
            else np.zeros(0)
        )
        self._boundary_values = torch.as_tensor(boundary_values, dtype=DTYPE)

    def residuals(self, field: SolutionField) -> torch.Tensor:
        """u(x, t_n) - U^n per (spatial node, step), shape (nodes, N)."""
        n_nodes, n_steps = self._shape
        values = field.values(self._grid_points).view(n_nodes, n_steps + 1)
        operator = apply_operator(self.problem, field, self._operator_points)
        drive = operator.view(n_nodes, n_steps) + self._forcing
        targets = drive * self._weights + values @ self._history.T
        return values[:, 1:] - targets

    def terms(self, field: SolutionField) -> dict[str, torch.Tensor]:
        residuals = self.residuals(field)
        loss_f = (self._counts * residuals**2).sum() / self.collocation.n_f
        loss_ic = ((field.values(self._initial_points) - self._initial_values) ** 2).mean()
        if self.collocation.n_bc:
            mismatch = field.values(self._boundary_points) - self._boundary_values
            loss_bc = (mismatch**2).mean()
        else:
            loss_bc = loss_f.new_zeros(())
        return {"loss_f": loss_f, "loss_ic": loss_ic, "loss_bc": loss_bc}

    def breakdown(self, model: NetworkParams | SolutionField) -> LossBreakdown:
        with torch.no_grad():
            terms = self.terms(as_field(model))
        return LossBreakdown(**{tag: float(term) for tag, term in terms.items()})


def assemble_loss(
    problem: FractionalIVP,
    params: NetworkParams | SolutionField,
    scheme: Scheme,
    collocation: CollocationSet,
    grid: TimeGrid,
) -> LossBreakdown:
    return LossAssembly(problem, scheme, collocation, grid).breakdown(params)


def predict(model: NetworkParams | SolutionField, points: np.ndarray) -> np.ndarray:
    field = as_field(model)
    points = np.asarray(points, dtype=np.float64)
    chunks: list[np.ndarray] = []
    with torch.no_grad():
        for start in range(0, points.shape[0], _EVALUATION_BATCH):
            batch = torch.as_tensor(points[start : start + _EVALUATION_BATCH], dtype=DTYPE)
            chunks.append(field.values(batch).numpy().copy())
    return np.concatenate(chunks) if chunks else np.zeros(0)


def l2_relative_error(
    model: NetworkParams | SolutionField,
    exact: SolutionField,
    points: np.ndarray,
) -> float:
    """||u_pred - u||_2 / ||u||_2 over the given points."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise InvalidArgumentError("The evaluation grid is empty")
    predicted = predict(model, points)
    reference = predict(exact, points)
    reference_norm = float(np.linalg.norm(reference))
    if reference_norm == 0.0:
        raise ZeroNormError()
    return float(np.linalg.norm(predicted - reference)) / reference_norm


def train(
    problem: FractionalIVP,
    scheme: Scheme,
    nt: int,
    nx: int | None = None,
    seed: int | None = None,
    config: LbfgsConfig | None = None,
    network: NetworkSpec | None = None,
) -> tuple[NetworkParams, SolveReport]:
    """Fit a network to the scheme on an nt-node time grid (nx nodes per space axis)."""
    scheme = Scheme(scheme)
    seed = settings.default_seed if seed is None else seed
    config = config or LbfgsConfig()
    spec = network or NetworkSpec(input_dim=problem.input_dim)
    if spec.input_dim != problem.input_dim:
        raise InvalidArgumentError(
            f"Network takes {spec.input_dim} inputs, problem '{problem.name}' "
            f"needs {problem.input_dim}"
        )
    if problem.spatial_dim == 0:
        nx = None

    grid = TimeGrid.from_nodes(problem.horizon, nt)
    collocation = build_collocation(problem, grid, nx)
    assembly = LossAssembly(problem, scheme, collocation, grid)
    initial = init_params(spec, seed)
    # per-term values at the most recent evaluation; the optimizer evaluates the
    # accepted point last before calling back
    latest = asdict(assembly.breakdown(initial))
    term_history = {tag: [value] for tag, value in latest.items()}

    def objective(flat: np.ndarray) -> tuple[float, np.ndarray]:
        if not np.all(np.isfinite(flat)):
            raise NumericalError("Trial parameters are not finite", term="parameters")
        evaluation = evaluate_objective(assembly.terms, NetworkParams(spec=spec, flat=flat))
        latest.update(evaluation.terms)
        return evaluation.loss, evaluation.grad

    def progress(iteration: int, loss: float) -> None:
        for tag, values in term_history.items():
            values.append(latest[tag])
        if iteration % settings.progress_every == 0:
            logger.info("lbfgs_progress", iteration=iteration, loss=loss)

    with run_context(
        problem=problem.name,
        scheme=scheme.value,
        alpha=problem.alpha.alpha,
        nt=nt,
        nx=nx,
        seed=seed,
    ):
        logger.info(
            "training_started",
            n_f=collocation.n_f,
            n_ic=collocation.n_ic,
            n_bc=collocation.n_bc,
            parameters=spec.parameter_count,
        )
        started = time.perf_counter()
        result = lbfgs_minimize(objective, initial.flat, config, progress)
        wall_time = time.perf_counter() - started

        params = NetworkParams(spec=spec, flat=result.x)
        losses = assembly.breakdown(NetworkField.from_params(params))
        error = None
        if problem.exact_solution is not None:
            error = l2_relative_error(params, exact_field(problem), evaluation_points(problem))

        if result.status is LbfgsStatus.line_search_failure:
            logger.warning("training_stopped_early", status=result.status.value)
        logger.info(
            "training_finished",
            status=result.status.value,
            iterations=result.iterations,
            loss=losses.total,
            l2_relative_error=error,
            wall_time_s=round(wall_time, 3),
        )

    report = SolveReport(
        problem=problem.name,
        scheme=scheme,
        alpha=problem.alpha.alpha,
        nt=nt,
        nx=nx,
        seed=seed,
        status=result.status,
        iterations=result.iterations,
        function_evaluations=result.function_evaluations,
        wall_time_s=wall_time,
        loss_f=losses.loss_f,
        loss_ic=losses.loss_ic,
        loss_bc=losses.loss_bc,
        loss_total=losses.total,
        l2_relative_error=error,
        loss_history=list(result.history),
        loss_f_history=term_history["loss_f"],
        loss_ic_history=term_history["loss_ic"],
        loss_bc_history=term_history["loss_bc"],
        config={
            "network": spec.model_dump(mode="json"),
            "optimizer": config.model_dump(mode="json"),
        },
    )
    return params, report
