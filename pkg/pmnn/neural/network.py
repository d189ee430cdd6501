"""Dense tanh networks evaluated as torch tensors.

Second input derivatives are carried forward as truncated Taylor jets
(value, d/dx_i, d^2/dx_i^2) through every layer, so the whole jet lives on the
autograd tape and parameter gradients flow through it.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import torch

from pmnn.exceptions import InvalidArgumentError
from pmnn.neural.models import JetValue, NetworkParams
from pmnn.neural.schemas import Activation, NetworkSpec

DTYPE = torch.float64


def init_params(spec: NetworkSpec, seed: int) -> NetworkParams:
    """Glorot-uniform weights, zero biases."""
    rng = np.random.default_rng(seed)
    chunks: list[np.ndarray] = []
    for fan_in, fan_out in spec.layer_shapes:
        limit = math.sqrt(6.0 / (fan_in + fan_out))
        chunks.append(rng.uniform(-limit, limit, size=fan_in * fan_out))
        chunks.append(np.zeros(fan_out))
    return NetworkParams(spec=spec, flat=np.concatenate(chunks))


def unflatten(flat: torch.Tensor, spec: NetworkSpec) -> list[tuple[torch.Tensor, torch.Tensor]]:
    layers: list[tuple[torch.Tensor, torch.Tensor]] = []
    offset = 0
    for fan_in, fan_out in spec.layer_shapes:
        weight = flat[offset : offset + fan_in * fan_out].view(fan_in, fan_out)
        offset += fan_in * fan_out
        bias = flat[offset : offset + fan_out]
        offset += fan_out
        layers.append((weight, bias))
    return layers


def check_tracked(tracked: Sequence[int], input_dim: int) -> list[int]:
    indices = [int(i) for i in tracked]
    if len(set(indices)) != len(indices):
        raise InvalidArgumentError(f"Tracked input indices must be distinct, got {indices}")
    for index in indices:
        if not 0 <= index < input_dim:
            raise InvalidArgumentError(
                f"Tracked index {index} is outside the input range [0, {input_dim})"
            )
    return indices


class NetworkField:
    """The network as a function of a batch of input points, shape (batch, input_dim)."""

    def __init__(self, spec: NetworkSpec, flat: torch.Tensor) -> None:
        self.spec = spec
        self.flat = flat
        self._layers = unflatten(flat, spec)

    @classmethod
    def from_params(cls, params: NetworkParams, requires_grad: bool = False) -> NetworkField:
        flat = torch.tensor(params.flat, dtype=DTYPE, requires_grad=requires_grad)
        return cls(params.spec, flat)

    def values(self, points: torch.Tensor) -> torch.Tensor:
        self._check_points(points)
        hidden = points
        last = len(self._layers) - 1
        for index, (weight, bias) in enumerate(self._layers):
            hidden = hidden @ weight + bias
            if index < last:
                hidden = self._activate(hidden)
        return hidden[:, 0]

    def jet(
        self, points: torch.Tensor, tracked: Sequence[int]
    ) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        """Value, first and pure second derivatives w.r.t. the tracked input columns."""
        self._check_points(points)
        indices = check_tracked(tracked, self.spec.input_dim)
        batch = points.shape[0]
        selector = torch.tensor(indices, dtype=torch.long)
        seeds = torch.eye(self.spec.input_dim, dtype=points.dtype).index_select(0, selector)

        value = points
        first = seeds.expand(batch, len(indices), self.spec.input_dim)
        second = torch.zeros_like(first)
        last = len(self._layers) - 1
        for index, (weight, bias) in enumerate(self._layers):
            value = value @ weight + bias
            first = first @ weight
            second = second @ weight
            if index == last:
                break
            value, slope, curvature = self._activate_jet(value)
            second = curvature.unsqueeze(1) * first**2 + slope.unsqueeze(1) * second
            first = slope.unsqueeze(1) * first
        return value[:, 0], first[:, :, 0], second[:, :, 0]

    def _activate(self, z: torch.Tensor) -> torch.Tensor:
        if self.spec.activation is Activation.identity:
            return z
        return torch.tanh(z)

    def _activate_jet(self, z: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        if self.spec.activation is Activation.identity:
            return z, torch.ones_like(z), torch.zeros_like(z)
        y = torch.tanh(z)
        slope = 1.0 - y**2
        return y, slope, -2.0 * y * slope

    def _check_points(self, points: torch.Tensor) -> None:
        if points.ndim != 2 or points.shape[1] != self.spec.input_dim:
            raise InvalidArgumentError(
                f"Expected points of shape (batch, {self.spec.input_dim}), "
                f"got {tuple(points.shape)}"
            )


def _single_point(params: NetworkParams, point: Sequence[float] | np.ndarray) -> torch.Tensor:
    values = np.asarray(point, dtype=np.float64).ravel()
    if values.size != params.spec.input_dim:
        raise InvalidArgumentError(
            f"Network takes {params.spec.input_dim} inputs, got {values.size}"
        )
    return torch.tensor(values, dtype=DTYPE).unsqueeze(0)


def forward(params: NetworkParams, point: Sequence[float] | np.ndarray) -> float:
    inputs = _single_point(params, point)
    with torch.no_grad():
        return float(NetworkField.from_params(params).values(inputs)[0])


def forward_jet(
    params: NetworkParams, point: Sequence[float] | np.ndarray, tracked: Sequence[int]
) -> JetValue:
    inputs = _single_point(params, point)
    with torch.no_grad():
        value, first, second = NetworkField.from_params(params).jet(inputs, tracked)
    return JetValue(value=float(value[0]), d1=first[0].numpy().copy(), d2=second[0].numpy().copy())
