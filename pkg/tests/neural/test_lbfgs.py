import numpy as np
import pytest

from pmnn.exceptions import NumericalError
from pmnn.neural import LbfgsConfig, LbfgsStatus, lbfgs_minimize


def quadratic(dim: int = 10):
    rng = np.random.default_rng(0)
    basis, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    matrix = basis @ np.diag(np.linspace(1.0, 10.0, dim)) @ basis.T
    rhs = rng.normal(size=dim)

    def fun(x):
        return 0.5 * x @ matrix @ x - rhs @ x, matrix @ x - rhs

    return fun, np.linalg.solve(matrix, rhs)


def rosenbrock(x):
    loss = (1.0 - x[0]) ** 2 + 100.0 * (x[1] - x[0] ** 2) ** 2
    grad = np.array(
        [
            -2.0 * (1.0 - x[0]) - 400.0 * x[0] * (x[1] - x[0] ** 2),
            200.0 * (x[1] - x[0] ** 2),
        ]
    )
    return loss, grad


def test_quadratic_converges():
    fun, solution = quadratic()
    config = LbfgsConfig(max_iterations=100, grad_tolerance=1e-10, loss_rel_tolerance=1e-30)
    result = lbfgs_minimize(fun, np.zeros(10), config)

    assert result.status is LbfgsStatus.converged
    assert result.iterations <= 30
    assert result.grad_norm < 1e-10
    np.testing.assert_allclose(result.x, solution, atol=1e-9)
    assert len(result.history) == result.iterations + 1


def test_history_is_non_increasing():
    fun, _ = quadratic()
    result = lbfgs_minimize(fun, np.ones(10), LbfgsConfig(max_iterations=50))
    pairs = zip(result.history, result.history[1:], strict=False)
    assert all(b <= a + 1e-15 * abs(a) for a, b in pairs)


def test_rosenbrock():
    config = LbfgsConfig(max_iterations=200, grad_tolerance=1e-10, loss_rel_tolerance=1e-30)
    result = lbfgs_minimize(rosenbrock, np.array([-1.2, 1.0]), config)
    assert result.iterations <= 200
    np.testing.assert_allclose(result.x, [1.0, 1.0], atol=1e-6)


def test_accepted_steps_satisfy_strong_wolfe():
    config = LbfgsConfig(max_iterations=60)
    result = lbfgs_minimize(rosenbrock, np.array([-1.2, 1.0]), config)
    assert result.steps
    for step in result.steps:
        assert step.slope_before < 0.0
        sufficient = step.loss_before + config.wolfe_c1 * step.step * step.slope_before
        assert step.loss_after <= sufficient + 1e-12
        assert abs(step.slope_after) <= config.wolfe_c2 * abs(step.slope_before) + 1e-12


def test_unbounded_objective_fails_line_search():
    slope = np.array([1.0, -2.0])
    result = lbfgs_minimize(lambda x: (float(slope @ x), slope.copy()), np.zeros(2))
    assert result.status is LbfgsStatus.line_search_failure
    assert result.iterations == 0


def test_converges_once_decrease_is_below_loss_resolution():
    fun, solution = quadratic()

    def shifted(x):
        loss, grad = fun(x)
        return loss + 1e3, grad

    config = LbfgsConfig(
        max_iterations=100, grad_tolerance=1e-10, loss_rel_tolerance=1e-30, stall_iterations=50
    )
    result = lbfgs_minimize(shifted, np.zeros(10), config)

    assert result.status is LbfgsStatus.converged
    assert result.grad_norm < 1e-10
    np.testing.assert_allclose(result.x, solution, atol=1e-9)


def test_step_length_is_capped():
    config = LbfgsConfig(line_search_max_step=1e3)
    result = lbfgs_minimize(lambda x: (-float(x.sum()), -np.ones_like(x)), np.zeros(4), config)
    assert result.status is LbfgsStatus.line_search_failure
    assert np.all(np.abs(result.x) <= 1e3)


def test_zero_gradient_returns_immediately():
    result = lbfgs_minimize(lambda x: (float(x @ x), 2.0 * x), np.zeros(3))
    assert result.status is LbfgsStatus.converged
    assert result.history == [0.0]
    assert result.iterations == 0


def test_iteration_cap():
    result = lbfgs_minimize(rosenbrock, np.array([-1.2, 1.0]), LbfgsConfig(max_iterations=3))
    assert result.status is LbfgsStatus.max_iterations
    assert result.iterations == 3


def test_callback_sees_every_iteration():
    seen = []
    fun, _ = quadratic()
    result = lbfgs_minimize(
        fun, np.zeros(10), LbfgsConfig(max_iterations=5), lambda i, loss: seen.append((i, loss))
    )
    assert [i for i, _ in seen] == list(range(1, result.iterations + 1))
    assert [loss for _, loss in seen] == result.history[1:]


def test_non_finite_start_is_rejected():
    with pytest.raises(NumericalError):
        lbfgs_minimize(lambda x: (np.nan, np.zeros_like(x)), np.zeros(2))


def test_wolfe_constants_are_ordered():
    with pytest.raises(ValueError):
        LbfgsConfig(wolfe_c1=0.9, wolfe_c2=0.1)
