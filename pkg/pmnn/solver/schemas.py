from typing import Any

from pydantic import BaseModel, Field

from pmnn.neural.schemas import LbfgsStatus
from pmnn.solver.models import LossBreakdown, Scheme


class SolveReport(BaseModel):
    problem: str
    scheme: Scheme
    alpha: float
    nt: int
    nx: int | None = None
    seed: int
    status: LbfgsStatus
    iterations: int
    function_evaluations: int
    wall_time_s: float
    loss_f: float
    loss_ic: float
    loss_bc: float
    loss_total: float
    l2_relative_error: float | None = None
    loss_history: list[float] = Field(default_factory=list)
    # per-term curves, aligned with loss_history
    loss_f_history: list[float] = Field(default_factory=list)
    loss_ic_history: list[float] = Field(default_factory=list)
    loss_bc_history: list[float] = Field(default_factory=list)
    config: dict[str, Any] = Field(default_factory=dict)

    @property
    def final_losses(self) -> LossBreakdown:
        return LossBreakdown(loss_f=self.loss_f, loss_ic=self.loss_ic, loss_bc=self.loss_bc)
