"""Value types shared by the Caputo discretizations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from pmnn.exceptions import InvalidArgumentError


def _frozen_array(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class FractionalOrder:
    """Caputo order strictly inside (0, 1)."""

    alpha: float

    def __post_init__(self) -> None:
        value = float(self.alpha)
        if not math.isfinite(value) or not 0.0 < value < 1.0:
            raise InvalidArgumentError(f"Fractional order must lie in (0, 1), got {self.alpha}")
        object.__setattr__(self, "alpha", value)

    @classmethod
    def of(cls, value: FractionalOrder | float) -> FractionalOrder:
        return value if isinstance(value, FractionalOrder) else cls(value)

    @property
    def sigma(self) -> float:
        return 1.0 - self.alpha / 2.0

    def __float__(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_k = k * tau on [0, horizon] with `steps` intervals."""

    horizon: float
    steps: int

    def __post_init__(self) -> None:
        horizon = float(self.horizon)
        if not math.isfinite(horizon) or horizon <= 0.0:
            raise InvalidArgumentError(f"Time horizon must be positive, got {self.horizon}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise InvalidArgumentError(f"Step count must be a positive integer, got {self.steps}")
        object.__setattr__(self, "horizon", horizon)
        object.__setattr__(self, "steps", int(self.steps))

    @classmethod
    def from_nodes(cls, horizon: float, n_nodes: int) -> TimeGrid:
        if n_nodes < 2:
            raise InvalidArgumentError(f"A time grid needs at least 2 nodes, got {n_nodes}")
        return cls(horizon, n_nodes - 1)

    @property
    def tau(self) -> float:
        return self.horizon / self.steps

    @cached_property
    def nodes(self) -> np.ndarray:
        nodes = np.arange(self.steps + 1, dtype=np.float64) * self.tau
        nodes[-1] = self.horizon
        return _frozen_array(nodes)

    def at(self, position: float) -> float:
        """Time at a possibly fractional grid position, e.g. n - 1 + sigma."""
        return position * self.tau


@dataclass(frozen=True)
class L1Weights:
    alpha: FractionalOrder
    a: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _frozen_array(self.a))

    @property
    def count(self) -> int:
        return int(self.a.size)


@dataclass(frozen=True)
class L2SigmaWeightRow:
    alpha: FractionalOrder
    n: int
    c: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.c.size != self.n:
            raise InvalidArgumentError(f"Row {self.n} must hold {self.n} coefficients")
        object.__setattr__(self, "c", _frozen_array(self.c))

    @property
    def sigma(self) -> float:
        return self.alpha.sigma
