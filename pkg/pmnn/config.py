from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    model_config = {"env_prefix": "PMNN_", "env_file": ".env", "env_file_encoding": "utf-8"}

    log_level: str = Field(default="INFO")
    log_format: Literal["json", "console"] = Field(default="json")
    default_seed: int = Field(default=42, ge=0)

    # Network
    hidden_layers: int = Field(default=5, ge=1)
    width: int = Field(default=20, ge=1)

    # Optimizer
    lbfgs_memory: int = Field(default=10, ge=1)
    lbfgs_max_iterations: int = Field(default=5000, ge=1)
    lbfgs_grad_tolerance: float = Field(default=1e-9, gt=0.0)
    lbfgs_loss_rel_tolerance: float = Field(default=1e-12, gt=0.0)
    wolfe_c1: float = Field(default=1e-4, gt=0.0, lt=1.0)
    wolfe_c2: float = Field(default=0.9, gt=0.0, lt=1.0)
    line_search_max_iterations: int = Field(default=40, ge=1)
    line_search_max_step: float = Field(default=1e8, gt=0.0)
    line_search_decrease_tolerance: float = Field(default=1e-15, ge=0.0)
    loss_stall_iterations: int = Field(default=5, ge=1)

    # Oracles
    quadrature_subdivisions: int = Field(default=200, ge=10)
    cg_rtol: float = Field(default=1e-12, gt=0.0)

    # Bench
    table_workers: int = Field(default=1, ge=1)
    progress_every: int = Field(default=100, ge=1)
    host: str = Field(default="127.0.0.1")
    port: int = Field(default=8000)


settings = Settings()
