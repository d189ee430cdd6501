import numpy as np
import pytest

from pmnn.caputo.models import TimeGrid
from pmnn.exceptions import InvalidArgumentError
from pmnn.solver.collocation import build_collocation, evaluation_points, spatial_axes


def test_fode_partition(fode):
    collocation = build_collocation(fode, TimeGrid.from_nodes(1.0, 41))
    assert (collocation.n_f, collocation.n_ic, collocation.n_bc) == (40, 1, 0)
    np.testing.assert_array_equal(collocation.interior_steps, np.arange(1, 41))
    assert collocation.interior_space.shape == (40, 0)


def test_diffusion_1d_partition(diffusion_1d):
    grid = TimeGrid.from_nodes(1.0, 41)
    collocation = build_collocation(diffusion_1d, grid, nx=11)
    assert (collocation.n_f, collocation.n_ic, collocation.n_bc) == (9 * 40, 11, 2 * 41)
    assert np.all((collocation.interior_space > 0.0) & (collocation.interior_space < 1.0))
    assert set(collocation.boundary_space.ravel()) == {0.0, 1.0}
    np.testing.assert_array_equal(np.unique(collocation.boundary_times), grid.nodes)


def test_diffusion_2d_partition(diffusion_2d):
    grid = TimeGrid.from_nodes(1.0, 21)
    collocation = build_collocation(diffusion_2d, grid, nx=11)
    assert collocation.n_f == 81 * 20
    assert collocation.n_ic == 121
    assert collocation.n_bc == 40 * 21
    on_edge = np.any(np.isin(collocation.boundary_space, (0.0, 1.0)), axis=1)
    assert np.all(on_edge)


def test_spatial_problem_needs_nodes(diffusion_1d):
    with pytest.raises(InvalidArgumentError):
        build_collocation(diffusion_1d, TimeGrid(1.0, 4))


def test_too_few_spatial_nodes(diffusion_1d):
    with pytest.raises(InvalidArgumentError):
        spatial_axes(diffusion_1d, 2)


def test_evaluation_grids(fode, diffusion_1d, diffusion_2d):
    assert evaluation_points(fode).shape == (500, 1)
    points = evaluation_points(diffusion_1d)
    assert points.shape == (100 * 100, 2)
    assert points[:, 1].max() == 1.0
    assert evaluation_points(diffusion_2d).shape == (100**3, 3)
