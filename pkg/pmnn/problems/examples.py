"""The three benchmark problems, each with a closed-form solution."""

import torch

from pmnn.caputo.models import FractionalOrder
from pmnn.caputo.weights import gamma_fn
from pmnn.problems.models import ExampleId
from pmnn.problems.registry import registry
from pmnn.solver.models import FractionalIVP, OperatorKind


@registry.register(
    ExampleId.fode1,
    spatial_dim=0,
    description="D^a u = -u + f on (0, 1], u = t^(5+a)",
)
def example1(alpha: FractionalOrder | float) -> FractionalIVP:
    order = FractionalOrder.of(alpha)
    a = order.alpha
    scale = gamma_fn(6.0 + a) / 120.0

    def exact(space: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
        return torch.pow(t, 5.0 + a)

    def forcing(space: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
        return scale * torch.pow(t, 5.0) + torch.pow(t, 5.0 + a)

    return FractionalIVP(
        alpha=order,
        horizon=1.0,
        spatial_dim=0,
        spatial_domain=(),
        operator=OperatorKind.neg_identity,
        forcing=forcing,
        boundary=exact,
        initial=lambda space: space.new_zeros(space.shape[0]),
        exact_solution=exact,
        name=ExampleId.fode1.value,
    )


@registry.register(
    ExampleId.conv1d,
    spatial_dim=1,
    description="D^a u = u_xx on [0, 1] x (0, 1], u = x^2 + 2 t^a / Gamma(1 + a)",
)
def example2(alpha: FractionalOrder | float) -> FractionalIVP:
    order = FractionalOrder.of(alpha)
    a = order.alpha
    scale = 2.0 / gamma_fn(1.0 + a)

    def exact(space: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
        return space[:, 0] ** 2 + scale * torch.pow(t, a)

    return FractionalIVP(
        alpha=order,
        horizon=1.0,
        spatial_dim=1,
        spatial_domain=((0.0, 1.0),),
        operator=OperatorKind.second_deriv_x,
        forcing=lambda space, t: torch.zeros_like(t),
        boundary=exact,
        initial=lambda space: space[:, 0] ** 2,
        exact_solution=exact,
        name=ExampleId.conv1d.value,
    )


@registry.register(
    ExampleId.conv2d,
    spatial_dim=2,
    description="D^a u = u_xx + u_yy + f on [0, 1]^2 x (0, 1], u = t^2 exp(x + y)",
)
def example3(alpha: FractionalOrder | float) -> FractionalIVP:
    order = FractionalOrder.of(alpha)
    a = order.alpha
    scale = 2.0 / gamma_fn(3.0 - a)

    def exact(space: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
        return t**2 * torch.exp(space[:, 0] + space[:, 1])

    def forcing(space: torch.Tensor, t: torch.Tensor) -> torch.Tensor:
        envelope = scale * torch.pow(t, 2.0 - a) - 2.0 * t**2
        return envelope * torch.exp(space[:, 0] + space[:, 1])

    return FractionalIVP(
        alpha=order,
        horizon=1.0,
        spatial_dim=2,
        spatial_domain=((0.0, 1.0), (0.0, 1.0)),
        operator=OperatorKind.laplacian_xy,
        forcing=forcing,
        boundary=exact,
        initial=lambda space: space.new_zeros(space.shape[0]),
        exact_solution=exact,
        name=ExampleId.conv2d.value,
    )


def build_problem(example: ExampleId | str | int, alpha: FractionalOrder | float) -> FractionalIVP:
    """Problem by id ("conv1d") or CLI number (2)."""
    if isinstance(example, int) or (isinstance(example, str) and example.isdigit()):
        example = ExampleId.from_number(example)
    return registry.build(example, alpha)
