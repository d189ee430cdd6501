"""Limited-memory BFGS with a strong-Wolfe line search.

Unconstrained: the training problems carry no box constraints, so the bound
handling of L-BFGS-B is not needed.
"""

from __future__ import annotations

import warnings
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy import optimize

from pmnn.exceptions import NumericalError
from pmnn.neural.schemas import LbfgsConfig, LbfgsStatus

logger = structlog.get_logger()

ObjectiveWithGradient = Callable[[np.ndarray], tuple[float, np.ndarray]]
ProgressCallback = Callable[[int, float], None]


@dataclass(frozen=True)
class LineSearchStep:
    step: float
    loss_before: float
    slope_before: float
    loss_after: float
    slope_after: float


@dataclass(frozen=True)
class LbfgsResult:
    x: np.ndarray = field(repr=False)
    history: list[float] = field(repr=False)
    status: LbfgsStatus
    iterations: int
    function_evaluations: int
    grad_norm: float
    steps: tuple[LineSearchStep, ...] = field(default=(), repr=False)


class _CachedObjective:
    """Memoizes the last evaluation; the line search asks for loss and gradient separately."""

    def __init__(self, fun: ObjectiveWithGradient) -> None:
        self._fun = fun
        self._x: np.ndarray | None = None
        self._loss = np.inf
        self._grad: np.ndarray | None = None
        self.evaluations = 0

    def __call__(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        if self._x is None or not np.array_equal(x, self._x):
            self.evaluations += 1
            try:
                loss, grad = self._fun(x)
                loss = float(loss)
                grad = np.asarray(grad, dtype=np.float64)
            except NumericalError:
                loss, grad = np.inf, np.full(x.shape, np.nan)
            if not np.isfinite(loss):
                loss, grad = np.inf, np.full(x.shape, np.nan)
            self._x = np.array(x, copy=True)
            self._loss, self._grad = loss, grad
        return self._loss, self._grad

    def loss(self, x: np.ndarray) -> float:
        return self(x)[0]

    def grad(self, x: np.ndarray) -> np.ndarray:
        return self(x)[1]


def _two_loop(grad: np.ndarray, pairs: deque[tuple[np.ndarray, np.ndarray, float]]) -> np.ndarray:
    """Apply the inverse-Hessian approximation to grad."""
    q = grad.copy()
    coefficients: list[float] = []
    for s, y, rho in reversed(pairs):
        coefficient = rho * float(s @ q)
        q -= coefficient * y
        coefficients.append(coefficient)
    if pairs:
        s, y, _ = pairs[-1]
        q *= float(s @ y) / float(y @ y)
    for (s, y, rho), coefficient in zip(pairs, reversed(coefficients), strict=True):
        q += s * (coefficient - rho * float(y @ q))
    return q


def _steepest_descent(grad: np.ndarray) -> np.ndarray:
    return -grad * min(1.0, 1.0 / max(float(np.abs(grad).sum()), np.finfo(float).tiny))


def _satisfies_wolfe(
    loss: float,
    slope: float,
    step: float,
    new_loss: float,
    new_slope: float,
    config: LbfgsConfig,
    slack: float = 0.0,
) -> bool:
    if not np.isfinite(new_loss) or not step > 0.0:
        return False
    sufficient = new_loss <= loss + config.wolfe_c1 * step * slope + slack
    return sufficient and abs(new_slope) <= config.wolfe_c2 * abs(slope)


def _strong_wolfe(
    objective: _CachedObjective,
    x: np.ndarray,
    direction: np.ndarray,
    loss: float,
    grad: np.ndarray,
    config: LbfgsConfig,
) -> tuple[float, float, np.ndarray] | None:
    slope = float(grad @ direction)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        step, *_ = optimize.line_search(
            objective.loss,
            objective.grad,
            x,
            direction,
            gfk=grad,
            old_fval=loss,
            c1=config.wolfe_c1,
            c2=config.wolfe_c2,
            amax=config.line_search_max_step,
            maxiter=config.line_search_max_iterations,
        )
    if step is not None and step <= config.line_search_max_step:
        new_loss, new_grad = objective(x + step * direction)
        # scipy hands back its last trial when it runs out of iterations
        if _satisfies_wolfe(loss, slope, step, new_loss, float(new_grad @ direction), config):
            return float(step), new_loss, new_grad
    return _resolution_limited_step(objective, x, direction, loss, slope, config)


def _resolution_limited_step(
    objective: _CachedObjective,
    x: np.ndarray,
    direction: np.ndarray,
    loss: float,
    slope: float,
    config: LbfgsConfig,
) -> tuple[float, float, np.ndarray] | None:
    """Halving search with the decrease test relaxed by a relative loss slack.

    Near a minimum the guaranteed decrease c1 * step * slope falls below the
    spacing of float64 around the loss, so the Armijo test fails on rounding
    alone. The curvature condition still has to hold.
    """
    slack = config.decrease_tolerance * max(abs(loss), np.finfo(float).tiny)
    step = 1.0
    for _ in range(config.line_search_max_iterations):
        new_loss, new_grad = objective(x + step * direction)
        if _satisfies_wolfe(
            loss, slope, step, new_loss, float(new_grad @ direction), config, slack
        ):
            return step, new_loss, new_grad
        step *= 0.5
    return None


def lbfgs_minimize(
    fun: ObjectiveWithGradient,
    initial: np.ndarray,
    config: LbfgsConfig | None = None,
    callback: ProgressCallback | None = None,
) -> LbfgsResult:
    config = config or LbfgsConfig()
    x = np.array(initial, dtype=np.float64, copy=True).ravel()
    objective = _CachedObjective(fun)

    loss, grad = objective(x)
    if not np.isfinite(loss) or not np.all(np.isfinite(grad)):
        raise NumericalError("Objective is not finite at the initial point", term="initial")

    history = [loss]
    steps: list[LineSearchStep] = []
    pairs: deque[tuple[np.ndarray, np.ndarray, float]] = deque(maxlen=config.memory)
    status = LbfgsStatus.max_iterations
    stalled = 0
    iterations = 0

    if float(np.max(np.abs(grad), initial=0.0)) < config.grad_tolerance:
        status = LbfgsStatus.converged
    else:
        while iterations < config.max_iterations:
            direction = -_two_loop(grad, pairs) if pairs else _steepest_descent(grad)
            if not float(grad @ direction) < 0.0:
                pairs.clear()
                direction = _steepest_descent(grad)

            found = _strong_wolfe(objective, x, direction, loss, grad, config)
            if found is None and pairs:
                # curvature memory can point uphill after a poor update; restart it once
                pairs.clear()
                direction = _steepest_descent(grad)
                found = _strong_wolfe(objective, x, direction, loss, grad, config)
            if found is None:
                status = LbfgsStatus.line_search_failure
                logger.warning("lbfgs_line_search_failed", iteration=iterations + 1, loss=loss)
                break

            step, new_loss, new_grad = found
            iterations += 1
            steps.append(
                LineSearchStep(
                    step=step,
                    loss_before=loss,
                    slope_before=float(grad @ direction),
                    loss_after=new_loss,
                    slope_after=float(new_grad @ direction),
                )
            )

            s = step * direction
            y = new_grad - grad
            curvature = float(s @ y)
            if curvature > np.finfo(float).eps * float(y @ y):
                pairs.append((s, y, 1.0 / curvature))

            change = (loss - new_loss) / max(abs(loss), abs(new_loss), np.finfo(float).tiny)
            stalled = stalled + 1 if change < config.loss_rel_tolerance else 0

            x = x + s
            loss, grad = new_loss, new_grad
            history.append(loss)
            if callback is not None:
                callback(iterations, loss)

            if float(np.max(np.abs(grad))) < config.grad_tolerance:
                status = LbfgsStatus.converged
                break
            if stalled >= config.stall_iterations:
                status = LbfgsStatus.converged
                break

    return LbfgsResult(
        x=x,
        history=history,
        status=status,
        iterations=iterations,
        function_evaluations=objective.evaluations,
        grad_norm=float(np.max(np.abs(grad), initial=0.0)),
        steps=tuple(steps),
    )


