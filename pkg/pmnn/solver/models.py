from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
import torch

from pmnn.caputo.models import FractionalOrder
from pmnn.exceptions import InvalidArgumentError

# (space (batch, spatial_dim), time (batch,)) -> (batch,)
SpaceTimeFn = Callable[[torch.Tensor, torch.Tensor], torch.Tensor]
SpaceFn = Callable[[torch.Tensor], torch.Tensor]


class Scheme(StrEnum):
    l1 = "l1"
    l2sigma = "l2sigma"


class OperatorKind(StrEnum):
    zero = "zero"
    neg_identity = "neg_identity"
    second_deriv_x = "second_deriv_x"
    laplacian_xy = "laplacian_xy"


_OPERATOR_DIMS: dict[OperatorKind, set[int]] = {
    OperatorKind.zero: {0, 1, 2},
    OperatorKind.neg_identity: {0},
    OperatorKind.second_deriv_x: {1},
    OperatorKind.laplacian_xy: {2},
}


@dataclass(frozen=True)
class FractionalIVP:
    """D_t^alpha u = L u + f on domain x (0, horizon], with initial and Dirichlet data."""

    alpha: FractionalOrder
    horizon: float
    spatial_dim: int
    spatial_domain: tuple[tuple[float, float], ...]
    operator: OperatorKind
    forcing: SpaceTimeFn = field(repr=False)
    boundary: SpaceTimeFn = field(repr=False)
    initial: SpaceFn = field(repr=False)
    exact_solution: SpaceTimeFn | None = field(default=None, repr=False)
    name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", FractionalOrder.of(self.alpha))
        if not self.horizon > 0.0:
            raise InvalidArgumentError(f"Time horizon must be positive, got {self.horizon}")
        if self.spatial_dim not in (0, 1, 2):
            raise InvalidArgumentError(
                f"Spatial dimension must be 0, 1 or 2, got {self.spatial_dim}"
            )
        if len(self.spatial_domain) != self.spatial_dim:
            raise InvalidArgumentError("One interval per spatial axis is required")
        for lower, upper in self.spatial_domain:
            if not lower < upper:
                raise InvalidArgumentError(f"Empty spatial interval [{lower}, {upper}]")
        if self.spatial_dim not in _OPERATOR_DIMS[self.operator]:
            raise InvalidArgumentError(
                f"Operator '{self.operator}' does not apply in dimension {self.spatial_dim}"
            )

    @property
    def input_dim(self) -> int:
        return self.spatial_dim + 1

    @property
    def tracked_axes(self) -> list[int]:
        """Network input columns whose second derivatives the operator needs."""
        if self.operator is OperatorKind.second_deriv_x:
            return [0]
        if self.operator is OperatorKind.laplacian_xy:
            return [0, 1]
        return []

    def sample(self, fn: SpaceTimeFn, space: np.ndarray, times: np.ndarray) -> np.ndarray:
        """Evaluate a space-time callable on numpy inputs paired row by row."""
        times = np.asarray(times, dtype=np.float64).ravel()
        # explicit row count: a (n, 0) array of an ODE cannot infer -1
        space_t = torch.as_tensor(
            np.asarray(space, dtype=np.float64).reshape(times.size, self.spatial_dim),
            dtype=torch.float64,
        )
        times_t = torch.as_tensor(times, dtype=torch.float64)
        with torch.no_grad():
            return fn(space_t, times_t).numpy().copy()

    def sample_initial(self, space: np.ndarray) -> np.ndarray:
        space = np.asarray(space, dtype=np.float64)
        rows = space.shape[0] if space.ndim else 1
        space_t = torch.as_tensor(space.reshape(rows, self.spatial_dim), dtype=torch.float64)
        with torch.no_grad():
            return self.initial(space_t).numpy().copy()


@dataclass(frozen=True)
class CollocationSet:
    interior_space: np.ndarray = field(repr=False)
    interior_steps: np.ndarray = field(repr=False)
    initial_space: np.ndarray = field(repr=False)
    boundary_space: np.ndarray = field(repr=False)
    boundary_times: np.ndarray = field(repr=False)

    @property
    def n_f(self) -> int:
        return int(self.interior_steps.size)

    @property
    def n_ic(self) -> int:
        return int(self.initial_space.shape[0])

    @property
    def n_bc(self) -> int:
        return int(self.boundary_times.size)


@dataclass(frozen=True)
class LossBreakdown:
    loss_f: float
    loss_ic: float
    loss_bc: float

    @property
    def total(self) -> float:
        return self.loss_f + self.loss_ic + self.loss_bc
