from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from pmnn.exceptions import InvalidArgumentError
from pmnn.neural.schemas import NetworkSpec


@dataclass(frozen=True)
class NetworkParams:
    """Flat parameter vector: per layer the row-major (fan_in, fan_out) weights, then biases."""

    spec: NetworkSpec
    flat: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        flat = np.array(self.flat, dtype=np.float64, copy=True).ravel()
        if flat.size != self.spec.parameter_count:
            raise InvalidArgumentError(
                f"Expected {self.spec.parameter_count} parameters, got {flat.size}"
            )
        if not np.all(np.isfinite(flat)):
            raise InvalidArgumentError("Network parameters must be finite")
        flat.setflags(write=False)
        object.__setattr__(self, "flat", flat)


@dataclass(frozen=True)
class JetValue:
    value: float
    d1: np.ndarray
    d2: np.ndarray
