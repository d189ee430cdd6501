"""Binary parameter snapshots.

Layout: magic "PMNN", then little-endian u32 version, input_dim, hidden_layers,
width, followed by the flat parameters as little-endian float64.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from pmnn.exceptions import InvalidArgumentError, OutputError
from pmnn.neural.models import NetworkParams
from pmnn.neural.schemas import Activation, NetworkSpec

MAGIC = b"PMNN"
VERSION = 1
_HEADER = struct.Struct("<4sIIII")


def encode_params(params: NetworkParams) -> bytes:
    spec = params.spec
    if spec.activation is not Activation.tanh:
        raise InvalidArgumentError("Only tanh networks can be written to a snapshot")
    header = _HEADER.pack(MAGIC, VERSION, spec.input_dim, spec.hidden_layers, spec.width)
    return header + params.flat.astype("<f8").tobytes()


def decode_params(data: bytes) -> NetworkParams:
    if len(data) < _HEADER.size:
        raise InvalidArgumentError("Snapshot is shorter than its header")
    magic, version, input_dim, hidden_layers, width = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise InvalidArgumentError(f"Not a parameter snapshot (magic {magic!r})")
    if version != VERSION:
        raise InvalidArgumentError(f"Unsupported snapshot version {version}")
    spec = NetworkSpec(input_dim=input_dim, hidden_layers=hidden_layers, width=width)
    payload = data[_HEADER.size :]
    if len(payload) != 8 * spec.parameter_count:
        raise InvalidArgumentError(
            f"Snapshot holds {len(payload) // 8} parameters, header implies "
            f"{spec.parameter_count}"
        )
    return NetworkParams(spec=spec, flat=np.frombuffer(payload, dtype="<f8").astype(np.float64))


def save_params(path: str | Path, params: NetworkParams) -> None:
    try:
        Path(path).write_bytes(encode_params(params))
    except OSError as exc:
        raise OutputError(f"Cannot write snapshot to {path}: {exc}") from exc


def load_params(path: str | Path) -> NetworkParams:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise OutputError(f"Cannot read snapshot from {path}: {exc}") from exc
    return decode_params(data)
