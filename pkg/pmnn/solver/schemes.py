"""Temporal iteration schemes in matrix form.

For every step n the scheme target is

    U^n = w_n * (L u + f)(t*_n) + sum_k H[n-1, k] * u^k,   k = 0..N

where t*_n is t_n for L1 and t_{n-1+sigma} for L2-1sigma. Only the history
matrix H, the weights w and the operator times differ between the schemes.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import cached_property, lru_cache

import numpy as np

from pmnn.caputo.models import FractionalOrder, L2SigmaWeightRow, TimeGrid
from pmnn.caputo.weights import caputo_prefactor, l1_weights, l2sigma_weight_table
from pmnn.solver.models import Scheme


class TemporalScheme(ABC):
    kind: Scheme

    def __init__(self, alpha: FractionalOrder, grid: TimeGrid) -> None:
        self.alpha = alpha
        self.grid = grid
        self.prefactor = caputo_prefactor(alpha, grid.tau)

    @property
    def steps(self) -> int:
        return self.grid.steps

    @property
    @abstractmethod
    def operator_times(self) -> np.ndarray:
        """Times t*_1..t*_N where the operator and forcing enter step n."""

    @property
    @abstractmethod
    def operator_weights(self) -> np.ndarray: ...

    @property
    @abstractmethod
    def history_matrix(self) -> np.ndarray:
        """(N, N + 1) coefficients of u^0..u^N in each step target."""

    def targets(self, values: np.ndarray, drive: np.ndarray) -> np.ndarray:
        """Targets for rows of grid values (.., N + 1) given (L u + f) at operator times (.., N)."""
        return drive * self.operator_weights + values @ self.history_matrix.T


class L1Scheme(TemporalScheme):
    kind = Scheme.l1

    @cached_property
    def weights(self) -> np.ndarray:
        return l1_weights(self.alpha, self.steps).a

    @property
    def operator_times(self) -> np.ndarray:
        return self.grid.nodes[1:]

    @cached_property
    def operator_weights(self) -> np.ndarray:
        return np.full(self.steps, self.prefactor / self.weights[0])

    @cached_property
    def history_matrix(self) -> np.ndarray:
        a = self.weights / self.weights[0]
        matrix = np.zeros((self.steps, self.steps + 1))
        for n in range(1, self.steps + 1):
            matrix[n - 1, 0] = a[n - 1]
            k = np.arange(1, n)
            matrix[n - 1, k] = a[n - k - 1] - a[n - k]
        matrix.setflags(write=False)
        return matrix


class L2SigmaScheme(TemporalScheme):
    kind = Scheme.l2sigma

    @cached_property
    def rows(self) -> tuple[L2SigmaWeightRow, ...]:
        return l2sigma_weight_table(self.alpha, self.steps)

    @cached_property
    def operator_times(self) -> np.ndarray:
        positions = np.arange(self.steps, dtype=np.float64) + self.alpha.sigma
        return positions * self.grid.tau

    @cached_property
    def operator_weights(self) -> np.ndarray:
        return np.array([self.prefactor / row.c[0] for row in self.rows])

    @cached_property
    def history_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.steps, self.steps + 1))
        for row in self.rows:
            n = row.n
            matrix[n - 1, n - 1] += 1.0
            for k in range(1, n):
                ratio = row.c[k] / row.c[0]
                matrix[n - 1, n - k - 1] += ratio
                matrix[n - 1, n - k] -= ratio
        matrix.setflags(write=False)
        return matrix


_SCHEMES: dict[Scheme, type[TemporalScheme]] = {
    Scheme.l1: L1Scheme,
    Scheme.l2sigma: L2SigmaScheme,
}


@lru_cache(maxsize=64)
def make_scheme(scheme: Scheme, alpha: FractionalOrder, grid: TimeGrid) -> TemporalScheme:
    return _SCHEMES[Scheme(scheme)](alpha, grid)
