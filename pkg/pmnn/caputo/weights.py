"""Gamma function and the L1 / L2-1sigma coefficient families."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special

from pmnn.caputo.models import FractionalOrder, L1Weights, L2SigmaWeightRow
from pmnn.exceptions import DomainError, InvalidArgumentError

# (l + 1)^b - l^b loses digits to cancellation beyond this index
_CANCELLATION_THRESHOLD = 10_000


def gamma_fn(x: float) -> float:
    if not x > 0.0:
        raise DomainError(f"Gamma function is evaluated on positive reals only, got {x}")
    return float(special.gamma(x))


def l1_weights(alpha: FractionalOrder | float, count: int) -> L1Weights:
    order = FractionalOrder.of(alpha)
    if int(count) != count or count < 1:
        raise InvalidArgumentError(f"L1 weight count must be a positive integer, got {count}")
    return _l1_weights(order, int(count))


@lru_cache(maxsize=256)
def _l1_weights(order: FractionalOrder, count: int) -> L1Weights:
    beta = 1.0 - order.alpha
    index = np.arange(count, dtype=np.float64)
    a = (index + 1.0) ** beta - index**beta
    large = index > _CANCELLATION_THRESHOLD
    if large.any():
        far = index[large]
        a[large] = far**beta * np.expm1(beta * np.log1p(1.0 / far))
    a[0] = 1.0
    return L1Weights(alpha=order, a=a)


def l2sigma_weight_row(alpha: FractionalOrder | float, n: int) -> L2SigmaWeightRow:
    order = FractionalOrder.of(alpha)
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"L2-1sigma row index must be a positive integer, got {n}")
    return _l2sigma_weight_row(order, int(n))


@lru_cache(maxsize=4096)
def _l2sigma_weight_row(order: FractionalOrder, n: int) -> L2SigmaWeightRow:
    alpha = order.alpha
    sigma = order.sigma
    if n == 1:
        return L2SigmaWeightRow(alpha=order, n=1, c=np.array([sigma ** (1.0 - alpha)]))

    def p1(s: np.ndarray | float) -> np.ndarray | float:
        return np.power(s, 1.0 - alpha)

    def p2(s: np.ndarray | float) -> np.ndarray | float:
        return np.power(s, 2.0 - alpha)

    c = np.empty(n, dtype=np.float64)
    c[0] = (p2(1.0 + sigma) - p2(sigma)) / (2.0 - alpha) - (p1(1.0 + sigma) - p1(sigma)) / 2.0

    k = np.arange(1, n - 1, dtype=np.float64)
    c[1 : n - 1] = (p2(k + 1.0 + sigma) - 2.0 * p2(k + sigma) + p2(k - 1.0 + sigma)) / (
        2.0 - alpha
    ) - (p1(k + 1.0 + sigma) - 2.0 * p1(k + sigma) + p1(k - 1.0 + sigma)) / 2.0

    last = n - 1.0 + sigma
    c[n - 1] = (3.0 * p1(last) - p1(last - 1.0)) / 2.0 - (p2(last) - p2(last - 1.0)) / (
        2.0 - alpha
    )
    return L2SigmaWeightRow(alpha=order, n=n, c=c)


def l2sigma_weight_table(
    alpha: FractionalOrder | float, steps: int
) -> tuple[L2SigmaWeightRow, ...]:
    """Rows 1..steps of the triangular L2-1sigma table."""
    order = FractionalOrder.of(alpha)
    if int(steps) != steps or steps < 1:
        raise InvalidArgumentError(f"Step count must be a positive integer, got {steps}")
    return tuple(_l2sigma_weight_row(order, n) for n in range(1, int(steps) + 1))


def caputo_prefactor(alpha: FractionalOrder | float, tau: float) -> float:
    """Gamma(2 - alpha) * tau^alpha, the inverse of the discrete-derivative scale."""
    order = FractionalOrder.of(alpha)
    if not tau > 0.0:
        raise InvalidArgumentError(f"Step size must be positive, got {tau}")
    return gamma_fn(2.0 - order.alpha) * math.pow(tau, order.alpha)
