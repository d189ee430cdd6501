"""Solution fields: anything that can be evaluated, with input jets, at a batch of points.

The PMNN targets are written against this protocol so that the trained network
and an exact-solution sampler can be substituted for one another.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Protocol

import torch

from pmnn.exceptions import InvalidArgumentError
from pmnn.neural.models import NetworkParams
from pmnn.neural.network import NetworkField, check_tracked
from pmnn.solver.models import FractionalIVP, OperatorKind, SpaceTimeFn


class SolutionField(Protocol):
    def values(self, points: torch.Tensor) -> torch.Tensor: ...

    def jet(
        self, points: torch.Tensor, tracked: Sequence[int]
    ) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]: ...


class FunctionField:
    """A space-time callable viewed as a field; derivatives come from autograd."""

    def __init__(self, fn: SpaceTimeFn, spatial_dim: int) -> None:
        self._fn = fn
        self._spatial_dim = spatial_dim

    def values(self, points: torch.Tensor) -> torch.Tensor:
        return self._fn(points[:, : self._spatial_dim], points[:, self._spatial_dim])

    def jet(
        self, points: torch.Tensor, tracked: Sequence[int]
    ) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        indices = check_tracked(tracked, self._spatial_dim + 1)
        with torch.enable_grad():
            return self._jet(points, indices)

    def _jet(
        self, points: torch.Tensor, indices: list[int]
    ) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        inputs = points.detach().clone().requires_grad_(True)
        value = self.values(inputs)
        zeros = torch.zeros_like(value)
        first: list[torch.Tensor] = []
        second: list[torch.Tensor] = []
        gradient = None
        if indices and value.requires_grad:
            (gradient,) = torch.autograd.grad(
                value.sum(), inputs, create_graph=True, allow_unused=True
            )
        for index in indices:
            column = None if gradient is None else gradient[:, index]
            first.append(zeros if column is None else column.detach())
            if column is None or not column.requires_grad:
                second.append(zeros)
                continue
            (hessian_row,) = torch.autograd.grad(
                column.sum(), inputs, retain_graph=True, allow_unused=True
            )
            second.append(zeros if hessian_row is None else hessian_row[:, index].detach())
        return value.detach(), _stack(first, points), _stack(second, points)


def _stack(parts: list[torch.Tensor], points: torch.Tensor) -> torch.Tensor:
    if not parts:
        return points.new_zeros(points.shape[0], 0)
    return torch.stack(parts, dim=1)


def exact_field(problem: FractionalIVP) -> FunctionField:
    if problem.exact_solution is None:
        raise InvalidArgumentError(f"Problem '{problem.name}' has no exact solution")
    return FunctionField(problem.exact_solution, problem.spatial_dim)


def as_field(model: NetworkParams | SolutionField) -> SolutionField:
    if isinstance(model, NetworkParams):
        return NetworkField.from_params(model)
    return model


def apply_operator(
    problem: FractionalIVP,
    field: SolutionField,
    points: torch.Tensor,
) -> torch.Tensor:
    """L u at the given points."""
    match problem.operator:
        case OperatorKind.zero:
            return points.new_zeros(points.shape[0])
        case OperatorKind.neg_identity:
            return -field.values(points)
        case OperatorKind.second_deriv_x | OperatorKind.laplacian_xy:
            _, _, second = field.jet(points, problem.tracked_axes)
            return second.sum(dim=1)
    raise InvalidArgumentError(f"Unknown operator '{problem.operator}'")
