"""Training and test point sets on uniform tensor grids."""

from __future__ import annotations

import numpy as np

from pmnn.caputo.models import TimeGrid
from pmnn.exceptions import InvalidArgumentError
from pmnn.solver.models import CollocationSet, FractionalIVP

FODE_TEST_POINTS = 500
PDE_TEST_NODES = 100


def spatial_axes(problem: FractionalIVP, nx: int) -> list[np.ndarray]:
    """Uniform nodes per spatial axis, boundary nodes included."""
    if problem.spatial_dim == 0:
        return []
    if nx < 3:
        raise InvalidArgumentError(f"At least 3 spatial nodes per axis are required, got {nx}")
    return [np.linspace(lower, upper, nx) for lower, upper in problem.spatial_domain]


def _tensor(axes: list[np.ndarray]) -> np.ndarray:
    if not axes:
        return np.zeros((1, 0))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def build_collocation(
    problem: FractionalIVP, grid: TimeGrid, nx: int | None = None
) -> CollocationSet:
    """Tensor-grid partition of the training points.

    interior: nodes off the spatial boundary x t_1..t_N
    initial: every spatial node at t = 0
    boundary: boundary nodes x t_0..t_N (empty for ODEs)
    """
    if problem.spatial_dim > 0 and nx is None:
        raise InvalidArgumentError(f"Problem '{problem.name}' needs a spatial node count")
    axes = spatial_axes(problem, nx or 0)
    steps = np.arange(1, grid.steps + 1)

    all_nodes = _tensor(axes)
    interior_nodes = _tensor([axis[1:-1] for axis in axes])
    interior_space = np.repeat(interior_nodes, steps.size, axis=0)
    interior_steps = np.tile(steps, interior_nodes.shape[0])

    if axes:
        on_edge = np.zeros(all_nodes.shape[0], dtype=bool)
        for column, axis in enumerate(axes):
            on_edge |= np.isin(all_nodes[:, column], (axis[0], axis[-1]))
        edge_nodes = all_nodes[on_edge]
    else:
        edge_nodes = np.zeros((0, 0))
    times = grid.nodes
    boundary_space = np.repeat(edge_nodes, times.size, axis=0)
    boundary_times = np.tile(times, edge_nodes.shape[0])

    return CollocationSet(
        interior_space=interior_space,
        interior_steps=interior_steps,
        initial_space=all_nodes,
        boundary_space=boundary_space,
        boundary_times=boundary_times,
    )


def evaluation_points(problem: FractionalIVP) -> np.ndarray:
    """Uniform evaluation grid, columns (space..., t): 500 times, or 100 nodes per axis."""
    if problem.spatial_dim == 0:
        return np.linspace(0.0, problem.horizon, FODE_TEST_POINTS).reshape(-1, 1)
    axes = [np.linspace(lower, upper, PDE_TEST_NODES) for lower, upper in problem.spatial_domain]
    axes.append(np.linspace(0.0, problem.horizon, PDE_TEST_NODES))
    return _tensor(axes)
