"""Reference values of the Caputo derivative used to verify the discrete schemes."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from scipy import integrate, special

from pmnn.caputo.models import FractionalOrder
from pmnn.caputo.weights import gamma_fn
from pmnn.config import settings
from pmnn.exceptions import ConvergenceError, InvalidArgumentError


def caputo_power_oracle(
    p: float, alpha: FractionalOrder | float, t: float | np.ndarray
) -> float | np.ndarray:
    """D^alpha t^p = Gamma(p + 1) / Gamma(p + 1 - alpha) * t^(p - alpha)."""
    order = FractionalOrder.of(alpha)
    if not p > 0.0:
        raise InvalidArgumentError(
            f"Power must be positive (constants have zero derivative), got {p}"
        )
    times = np.asarray(t, dtype=np.float64)
    if np.any(times < 0.0):
        raise InvalidArgumentError("Caputo derivative of t^p is defined for t >= 0")

    scale = np.exp(special.gammaln(p + 1.0) - special.gammaln(p + 1.0 - order.alpha))
    exponent = p - order.alpha
    with np.errstate(divide="ignore"):
        values = scale * np.power(times, exponent)
    if exponent > 0.0:
        values = np.where(times == 0.0, 0.0, values)
    return float(values) if values.ndim == 0 else values


def caputo_quadrature_oracle(
    fprime: Callable[[float], float],
    alpha: FractionalOrder | float,
    t: float,
    tol: float = 1e-10,
) -> float:
    """Adaptive quadrature of the Caputo integral of f' at time t.

    The substitution s = t - v^(1/(1-alpha)) turns the weakly singular kernel
    (t - s)^(-alpha) ds into (1/(1-alpha)) dv, so the integrand is smooth.
    """
    order = FractionalOrder.of(alpha)
    if not t > 0.0:
        raise InvalidArgumentError(f"Evaluation time must be positive, got {t}")
    if not tol > 0.0:
        raise InvalidArgumentError(f"Tolerance must be positive, got {tol}")

    beta = 1.0 - order.alpha
    # (1 - alpha) * Gamma(1 - alpha) = Gamma(2 - alpha)
    scale = 1.0 / gamma_fn(2.0 - order.alpha)

    def integrand(v: float) -> float:
        return float(fprime(t - v ** (1.0 / beta)))

    result = integrate.quad(
        integrand,
        0.0,
        t**beta,
        epsabs=tol / scale,
        epsrel=0.0,
        limit=settings.quadrature_subdivisions,
        full_output=1,
    )
    value, abserr = scale * result[0], scale * result[1]
    if len(result) > 3 or abserr > tol:
        raise ConvergenceError(
            f"Caputo quadrature did not reach tolerance {tol:g} (estimated error {abserr:.3g})",
            best_estimate=value,
        )
    return value
