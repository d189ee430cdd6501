"""Reverse-mode parameter gradients of objectives recorded on the torch tape."""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

import numpy as np
import torch

from pmnn.exceptions import InvalidArgumentError, NumericalError
from pmnn.neural.models import NetworkParams
from pmnn.neural.network import NetworkField

Objective = Callable[[NetworkField], torch.Tensor | Mapping[str, torch.Tensor]]


@dataclass(frozen=True)
class ObjectiveEvaluation:
    loss: float
    grad: np.ndarray = field(repr=False)
    terms: dict[str, float] = field(default_factory=dict)


def evaluate_objective(objective: Objective, params: NetworkParams) -> ObjectiveEvaluation:
    """Sum the objective's tagged scalar terms and differentiate w.r.t. the flat parameters."""
    network = NetworkField.from_params(params, requires_grad=True)
    recorded = objective(network)
    terms = {"objective": recorded} if isinstance(recorded, torch.Tensor) else dict(recorded)
    if not terms:
        raise InvalidArgumentError("Objective produced no terms")

    total: torch.Tensor | None = None
    for tag, term in terms.items():
        if term.ndim != 0:
            raise InvalidArgumentError(f"Objective term '{tag}' is not a scalar")
        if not torch.isfinite(term):
            raise NumericalError(f"Objective term '{tag}' is not finite", term=tag)
        total = term if total is None else total + term

    grad = None
    if total.requires_grad:
        (grad,) = torch.autograd.grad(total, network.flat, allow_unused=True)
    if grad is None:
        grad_values = np.zeros(params.flat.size)
    else:
        grad_values = grad.detach().numpy().copy()
    if not np.all(np.isfinite(grad_values)):
        raise NumericalError("Parameter gradient is not finite", term="gradient")

    return ObjectiveEvaluation(
        loss=float(total),
        grad=grad_values,
        terms={tag: float(term) for tag, term in terms.items()},
    )


def loss_gradient(objective: Objective, params: NetworkParams) -> tuple[float, np.ndarray]:
    evaluation = evaluate_objective(objective, params)
    return evaluation.loss, evaluation.grad
