from enum import StrEnum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from pmnn.config import settings
from pmnn.neural.schemas import LbfgsConfig, NetworkSpec
from pmnn.problems.models import ExampleId
from pmnn.solver.models import Scheme


class ConvergenceFunction(StrEnum):
    const = "const"
    t = "t"
    t2 = "t2"
    t3 = "t3"
    t4 = "t4"

    @property
    def power(self) -> int:
        return 0 if self is ConvergenceFunction.const else int(self.value[1:] or 1)


class TableId(StrEnum):
    ode_err = "ode-err"
    pde1d_err = "pde1d-err"
    pde1d_nx = "pde1d-nx"
    pde2d_err = "pde2d-err"
    pde2d_nx = "pde2d-nx"


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    example: ExampleId
    alpha: float = Field(gt=0.0, lt=1.0)
    scheme: Scheme = Scheme.l1
    nt: int = Field(default=41, ge=2)
    nx: int = Field(default=11, ge=3)
    seed: int = Field(default_factory=lambda: settings.default_seed, ge=0)
    hidden_layers: int = Field(default_factory=lambda: settings.hidden_layers, ge=1)
    width: int = Field(default_factory=lambda: settings.width, ge=1)
    max_iters: int | None = Field(default=None, ge=1)
    memory: int | None = Field(default=None, ge=1)
    grad_tolerance: float | None = Field(default=None, gt=0.0)
    out: Path | None = None
    dump_prediction: Path | None = None
    save_params: Path | None = None

    def lbfgs_config(self) -> LbfgsConfig:
        overrides = {
            "max_iterations": self.max_iters,
            "memory": self.memory,
            "grad_tolerance": self.grad_tolerance,
        }
        return LbfgsConfig(**{key: value for key, value in overrides.items() if value is not None})

    def network_spec(self, input_dim: int) -> NetworkSpec:
        return NetworkSpec(input_dim=input_dim, hidden_layers=self.hidden_layers, width=self.width)


class WeightsResponse(BaseModel):
    alpha: float
    scheme: Scheme
    n: int
    weights: list[float]


class ConvergenceRow(BaseModel):
    n: int
    tau: float
    error: float


class ConvergenceStudy(BaseModel):
    scheme: Scheme
    alpha: float
    function: ConvergenceFunction
    rows: list[ConvergenceRow]
    # None when every error is at roundoff level
    order: float | None = None

    @property
    def order_label(self) -> str:
        return "exact" if self.order is None else repr(self.order)


class FdmRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    example: ExampleId
    alpha: float = Field(gt=0.0, lt=1.0)
    scheme: Scheme = Scheme.l1
    nt: int = Field(default=41, ge=2)
    nx: int = Field(default=11, ge=3)


class FdmSummary(BaseModel):
    problem: str
    scheme: Scheme
    alpha: float
    nt: int
    nx: int | None = None
    max_abs_error: float
    error_at_final: float
    wall_time_s: float


class TableReport(BaseModel):
    table: TableId
    seeds: list[int]
    header: list[str]
    rows: list[dict[str, Any]] = Field(default_factory=list)
