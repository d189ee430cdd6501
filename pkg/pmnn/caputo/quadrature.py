"""Discrete Caputo derivatives on uniform grids."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from pmnn.caputo.models import FractionalOrder
from pmnn.caputo.weights import caputo_prefactor, l1_weights, l2sigma_weight_row
from pmnn.exceptions import InvalidArgumentError


def _backward_differences(samples: Sequence[float] | np.ndarray) -> np.ndarray:
    values = np.asarray(samples, dtype=np.float64)
    if values.ndim != 1 or values.size < 2:
        raise InvalidArgumentError("A discrete Caputo derivative needs at least 2 samples")
    # f(t_n) - f(t_{n-1}), ..., f(t_1) - f(t_0)
    return np.diff(values)[::-1]


def caputo_l1(
    samples: Sequence[float] | np.ndarray, alpha: FractionalOrder | float, tau: float
) -> float:
    """L1 approximation of the Caputo derivative at the last sample time t_n."""
    differences = _backward_differences(samples)
    weights = l1_weights(alpha, differences.size)
    return float(np.dot(weights.a, differences)) / caputo_prefactor(weights.alpha, tau)


def caputo_l2sigma(
    samples: Sequence[float] | np.ndarray, alpha: FractionalOrder | float, tau: float
) -> float:
    """L2-1sigma approximation at t_{n-1+sigma}, not at the last sample time."""
    differences = _backward_differences(samples)
    row = l2sigma_weight_row(alpha, differences.size)
    return float(np.dot(row.c, differences)) / caputo_prefactor(row.alpha, tau)
