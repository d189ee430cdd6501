import numpy as np
import pytest

from pmnn.caputo.models import TimeGrid
from pmnn.exceptions import InvalidArgumentError
from pmnn.fdm import fdm_solve
from pmnn.neural import LbfgsConfig, LbfgsStatus, NetworkSpec
from pmnn.solver import Scheme, evaluation_points, exact_field, predict, train

TINY = NetworkSpec(input_dim=1, hidden_layers=2, width=6)


def test_short_run_report(fode, quick_lbfgs):
    params, report = train(fode, Scheme.l1, nt=11, seed=3, config=quick_lbfgs, network=TINY)
    assert params.spec == TINY
    assert report.problem == "fode1"
    assert report.nx is None
    assert report.iterations <= 5
    assert len(report.loss_history) == report.iterations + 1
    assert report.loss_history[-1] <= report.loss_history[0]
    assert report.loss_total == pytest.approx(report.loss_f + report.loss_ic + report.loss_bc)
    assert report.loss_bc == 0.0
    assert report.l2_relative_error is not None and np.isfinite(report.l2_relative_error)
    assert set(report.config) == {"network", "optimizer"}
    assert report.config["optimizer"]["max_iterations"] == 5


def test_per_term_curves_follow_total(diffusion_1d, quick_lbfgs):
    spec = NetworkSpec(input_dim=2, hidden_layers=2, width=6)
    _, report = train(
        diffusion_1d, Scheme.l1, nt=6, nx=5, seed=2, config=quick_lbfgs, network=spec
    )
    curves = (report.loss_f_history, report.loss_ic_history, report.loss_bc_history)
    assert all(len(curve) == len(report.loss_history) for curve in curves)
    summed = np.sum(curves, axis=0)
    np.testing.assert_allclose(summed, report.loss_history, rtol=1e-12)
    assert report.loss_f_history[-1] == pytest.approx(report.loss_f, rel=1e-12)
    assert report.loss_bc_history[-1] == pytest.approx(report.loss_bc, rel=1e-12)


def test_fode_boundary_curve_is_zero(fode, quick_lbfgs):
    _, report = train(fode, Scheme.l2sigma, nt=11, seed=1, config=quick_lbfgs, network=TINY)
    assert report.loss_bc_history == [0.0] * len(report.loss_history)
    assert len(report.loss_f_history) == report.iterations + 1


def test_training_is_seeded(diffusion_1d, quick_lbfgs):
    spec = NetworkSpec(input_dim=2, hidden_layers=2, width=6)
    options = {"nt": 6, "nx": 5, "seed": 1, "config": quick_lbfgs, "network": spec}
    first, _ = train(diffusion_1d, Scheme.l2sigma, **options)
    second, _ = train(diffusion_1d, Scheme.l2sigma, **options)
    np.testing.assert_array_equal(first.flat, second.flat)


def test_network_must_match_problem(diffusion_1d):
    with pytest.raises(InvalidArgumentError):
        train(diffusion_1d, Scheme.l1, nt=6, nx=5, network=TINY)


def test_status_is_reported(fode):
    _, report = train(fode, Scheme.l1, nt=6, config=LbfgsConfig(max_iterations=1), network=TINY)
    assert report.status in (LbfgsStatus.max_iterations, LbfgsStatus.converged)


@pytest.mark.slow
@pytest.mark.parametrize("scheme", list(Scheme))
def test_fode_reproduction(fode, scheme):
    _, report = train(fode, scheme, nt=41)
    assert report.l2_relative_error <= 5e-2


@pytest.mark.slow
@pytest.mark.parametrize("scheme", list(Scheme))
def test_diffusion_1d_reproduction(diffusion_1d, scheme):
    _, report = train(diffusion_1d, scheme, nt=41, nx=11)
    assert report.l2_relative_error <= 2e-2


@pytest.mark.slow
@pytest.mark.parametrize("scheme", list(Scheme))
def test_diffusion_2d_reproduction(diffusion_2d, scheme):
    _, report = train(diffusion_2d, scheme, nt=21, nx=11)
    assert report.l2_relative_error <= 5e-3


@pytest.mark.slow
def test_network_agrees_with_finite_differences(fode):
    params, _ = train(fode, Scheme.l1, nt=41)
    reference = fdm_solve(fode, 1024)
    points = evaluation_points(fode)
    grid = TimeGrid(1.0, 1024)
    on_grid = np.interp(points[:, 0], grid.nodes, reference.values)
    exact = predict(exact_field(fode), points)
    scale = np.linalg.norm(exact)
    assert np.linalg.norm(predict(params, points) - on_grid) / scale <= 5e-2


@pytest.mark.slow
def test_error_falls_with_time_nodes(fode):
    medians = []
    for nt in (11, 81):
        reports = [train(fode, Scheme.l1, nt=nt, seed=seed)[1] for seed in (1, 2, 3)]
        errors = [report.l2_relative_error for report in reports]
        medians.append(float(np.median(errors)))
    assert medians[1] < medians[0]


@pytest.mark.slow
def test_error_is_insensitive_to_space_nodes(diffusion_1d):
    errors = [
        train(diffusion_1d, Scheme.l2sigma, nt=41, nx=nx)[1].l2_relative_error
        for nx in (6, 11, 21, 41)
    ]
    assert max(errors) < 3.0 * min(errors)


@pytest.mark.slow
def test_network_agrees_with_finite_differences_in_space(diffusion_1d):
    params, report = train(diffusion_1d, Scheme.l2sigma, nt=41, nx=11)
    reference = fdm_solve(diffusion_1d, 40, 11)
    points = reference.points()
    exact = reference.exact_values(diffusion_1d).ravel()
    fdm_error = np.linalg.norm(reference.values.ravel() - exact) / np.linalg.norm(exact)
    gap = np.linalg.norm(predict(params, points) - reference.values.ravel()) / np.linalg.norm(exact)
    assert gap <= 3.0 * (report.l2_relative_error + fdm_error)


@pytest.mark.slow
def test_lowest_loss_run_has_near_best_error(fode):
    reports = [train(fode, Scheme.l1, nt=41, seed=seed)[1] for seed in range(1, 6)]
    best_error = min(report.l2_relative_error for report in reports)
    lowest_loss = min(reports, key=lambda report: report.loss_total)
    assert lowest_loss.l2_relative_error <= 3.0 * best_error
