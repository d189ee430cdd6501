from enum import StrEnum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pmnn.config import settings


class Activation(StrEnum):
    tanh = "tanh"
    # verification build: makes the network a polynomial in its inputs
    identity = "identity"


class LbfgsStatus(StrEnum):
    converged = "Converged"
    max_iterations = "MaxIterations"
    line_search_failure = "LineSearchFailure"


class NetworkSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    input_dim: int = Field(ge=1, le=3)
    hidden_layers: int = Field(default_factory=lambda: settings.hidden_layers, ge=1)
    width: int = Field(default_factory=lambda: settings.width, ge=1)
    activation: Activation = Activation.tanh

    @property
    def layer_shapes(self) -> list[tuple[int, int]]:
        """(fan_in, fan_out) per dense layer, output layer last."""
        shapes = [(self.input_dim, self.width)]
        shapes += [(self.width, self.width)] * (self.hidden_layers - 1)
        shapes.append((self.width, 1))
        return shapes

    @property
    def parameter_count(self) -> int:
        return sum(fan_in * fan_out + fan_out for fan_in, fan_out in self.layer_shapes)


class LbfgsConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    memory: int = Field(default_factory=lambda: settings.lbfgs_memory, ge=1)
    max_iterations: int = Field(default_factory=lambda: settings.lbfgs_max_iterations, ge=1)
    grad_tolerance: float = Field(default_factory=lambda: settings.lbfgs_grad_tolerance, gt=0.0)
    loss_rel_tolerance: float = Field(
        default_factory=lambda: settings.lbfgs_loss_rel_tolerance, gt=0.0
    )
    wolfe_c1: float = Field(default_factory=lambda: settings.wolfe_c1, gt=0.0, lt=1.0)
    wolfe_c2: float = Field(default_factory=lambda: settings.wolfe_c2, gt=0.0, lt=1.0)
    line_search_max_iterations: int = Field(
        default_factory=lambda: settings.line_search_max_iterations, ge=1
    )
    line_search_max_step: float = Field(
        default_factory=lambda: settings.line_search_max_step, gt=0.0
    )
    # relative loss slack once sufficient decrease drops below float64 resolution
    decrease_tolerance: float = Field(
        default_factory=lambda: settings.line_search_decrease_tolerance, ge=0.0
    )
    stall_iterations: int = Field(default_factory=lambda: settings.loss_stall_iterations, ge=1)

    @model_validator(mode="after")
    def _check_wolfe_constants(self) -> Self:
        if not self.wolfe_c1 < self.wolfe_c2:
            raise ValueError("wolfe_c1 must be smaller than wolfe_c2")
        return self
