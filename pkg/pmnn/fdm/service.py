"""Network-free reference solvers: L1 in time (L2-1sigma for ODEs), centered in space."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import structlog

from pmnn.caputo.models import TimeGrid
from pmnn.caputo.weights import caputo_prefactor, l1_weights, l2sigma_weight_row
from pmnn.config import settings
from pmnn.exceptions import InvalidArgumentError
from pmnn.fdm.linalg import cg_solve, laplacian_2d, thomas_solve
from pmnn.fdm.models import GridSolution
from pmnn.solver.collocation import spatial_axes
from pmnn.solver.models import FractionalIVP, OperatorKind, Scheme

logger = structlog.get_logger()


class _L1History:
    """sum_{k=1}^{n-1} (a_{n-k-1} - a_{n-k}) u^k + a_{n-1} u^0 for stored levels u^0..u^{n-1}."""

    def __init__(self, problem: FractionalIVP, steps: int) -> None:
        self.a = l1_weights(problem.alpha, steps).a
        self.b = self.a[:-1] - self.a[1:]

    def __call__(self, levels: np.ndarray, n: int) -> np.ndarray:
        return self.a[n - 1] * levels[0] + self.b[: n - 1][::-1] @ levels[1:n]


def _require_dim(problem: FractionalIVP, dim: int) -> None:
    if problem.spatial_dim != dim:
        raise InvalidArgumentError(
            f"Problem '{problem.name}' is {problem.spatial_dim}-dimensional in space, "
            f"this solver handles {dim}"
        )


def _flat_nodes(axes: list[np.ndarray]) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def fdm_solve_fode(
    problem: FractionalIVP, steps: int, scheme: Scheme = Scheme.l1
) -> GridSolution:
    """Scalar implicit solve per step for D^a u = lam * u + f, lam in {-1, 0}."""
    _require_dim(problem, 0)
    scheme = Scheme(scheme)
    grid = TimeGrid(problem.horizon, steps)
    mu = caputo_prefactor(problem.alpha, grid.tau)
    lam = -1.0 if problem.operator is OperatorKind.neg_identity else 0.0
    no_space = np.zeros((steps, 0))

    u = np.zeros(steps + 1)
    u[0] = problem.sample_initial(np.zeros((1, 0)))[0]

    if scheme is Scheme.l1:
        forcing = problem.sample(problem.forcing, no_space, grid.nodes[1:])
        history = _L1History(problem, steps)
        for n in range(1, steps + 1):
            u[n] = (mu * forcing[n - 1] + history(u, n)) / (1.0 - mu * lam)
    else:
        sigma = problem.alpha.sigma
        times = (np.arange(steps) + sigma) * grid.tau
        forcing = problem.sample(problem.forcing, no_space, times)
        for n in range(1, steps + 1):
            c = l2sigma_weight_row(problem.alpha, n).c
            memory = c[1:] @ np.diff(u[:n])[::-1]
            # operator term at t_{n-1+sigma} interpolated between u^{n-1} and u^n
            rhs = c[0] * u[n - 1] - memory + mu * (lam * (1.0 - sigma) * u[n - 1] + forcing[n - 1])
            u[n] = rhs / (c[0] - mu * lam * sigma)

    logger.info("fdm_solved", problem=problem.name, scheme=scheme.value, steps=steps)
    return GridSolution(grid=grid, axes=(), values=u)


def fdm_solve_1d(problem: FractionalIVP, steps: int, nx: int) -> GridSolution:
    """Tridiagonal step (I - mu D_xx) u^n = mu f^n + history, Dirichlet rows pinned."""
    _require_dim(problem, 1)
    (x,) = spatial_axes(problem, nx)
    grid = TimeGrid(problem.horizon, steps)
    mu = caputo_prefactor(problem.alpha, grid.tau)
    r = mu / (x[1] - x[0]) ** 2
    space = x.reshape(-1, 1)
    history = _L1History(problem, steps)

    lower = np.full(nx - 1, -r)
    diag = np.full(nx, 1.0 + 2.0 * r)
    upper = np.full(nx - 1, -r)
    diag[[0, -1]] = 1.0
    upper[0] = 0.0
    lower[-1] = 0.0

    u = np.zeros((steps + 1, nx))
    u[0] = problem.sample_initial(space)
    edges = space[[0, -1]]
    for n in range(1, steps + 1):
        t = np.full(nx, grid.nodes[n])
        rhs = mu * problem.sample(problem.forcing, space, t) + history(u, n)
        rhs[[0, -1]] = problem.sample(problem.boundary, edges, t[:2])
        u[n] = thomas_solve(lower, diag, upper, rhs)

    logger.info("fdm_solved", problem=problem.name, scheme=Scheme.l1.value, steps=steps, nx=nx)
    return GridSolution(grid=grid, axes=(x,), values=u)


def fdm_solve_2d(problem: FractionalIVP, steps: int, nx: int) -> GridSolution:
    """(I - mu Lap_h) u^n = rhs on the interior block, solved by conjugate gradients."""
    _require_dim(problem, 2)
    x, y = spatial_axes(problem, nx)
    if not np.isclose(x[1] - x[0], y[1] - y[0]):
        raise InvalidArgumentError("The 2D solver needs equal spacing on both axes")
    grid = TimeGrid(problem.horizon, steps)
    mu = caputo_prefactor(problem.alpha, grid.tau)
    h = x[1] - x[0]
    r = mu / h**2
    m = nx - 2
    history = _L1History(problem, steps)

    system = (sp.identity(m * m, format="csr") - mu * laplacian_2d(m, h)).tocsr()
    all_nodes = _flat_nodes([x, y])
    interior_nodes = _flat_nodes([x[1:-1], y[1:-1]])
    on_edge = np.ones((nx, nx), dtype=bool)
    on_edge[1:-1, 1:-1] = False
    edge_nodes = all_nodes[on_edge.ravel()]

    u = np.zeros((steps + 1, nx, nx))
    u[0] = problem.sample_initial(all_nodes).reshape(nx, nx)
    for n in range(1, steps + 1):
        t = grid.nodes[n]
        level = np.zeros((nx, nx))
        level[on_edge] = problem.sample(
            problem.boundary, edge_nodes, np.full(edge_nodes.shape[0], t)
        )
        neighbours = level[:-2, 1:-1] + level[2:, 1:-1] + level[1:-1, :-2] + level[1:-1, 2:]
        forcing = problem.sample(
            problem.forcing, interior_nodes, np.full(interior_nodes.shape[0], t)
        )
        rhs = (
            mu * forcing
            + history(u[:, 1:-1, 1:-1].reshape(steps + 1, -1), n)
            + r * neighbours.ravel()
        )
        level[1:-1, 1:-1] = cg_solve(
            system,
            rhs,
            x0=u[n - 1, 1:-1, 1:-1].ravel(),
            rtol=settings.cg_rtol,
            maxiter=10 * nx**2,
        ).reshape(m, m)
        u[n] = level

    logger.info("fdm_solved", problem=problem.name, scheme=Scheme.l1.value, steps=steps, nx=nx)
    return GridSolution(grid=grid, axes=(x, y), values=u)


def fdm_solve(
    problem: FractionalIVP, steps: int, nx: int | None = None, scheme: Scheme = Scheme.l1
) -> GridSolution:
    """Dispatch on the spatial dimension; PDE solvers are L1 only."""
    scheme = Scheme(scheme)
    if problem.spatial_dim == 0:
        return fdm_solve_fode(problem, steps, scheme)
    if scheme is not Scheme.l1:
        raise InvalidArgumentError("The L2-1sigma reference solver handles ODE problems only")
    if nx is None:
        raise InvalidArgumentError(f"Problem '{problem.name}' needs a spatial node count")
    if problem.spatial_dim == 1:
        return fdm_solve_1d(problem, steps, nx)
    return fdm_solve_2d(problem, steps, nx)
