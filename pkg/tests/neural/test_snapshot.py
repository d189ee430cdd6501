import struct

import numpy as np
import pytest

from pmnn.exceptions import InvalidArgumentError, OutputError
from pmnn.neural import (
    Activation,
    NetworkSpec,
    decode_params,
    encode_params,
    init_params,
    load_params,
    save_params,
)


def test_file_round_trip(tmp_path, small_spec):
    params = init_params(small_spec, seed=5)
    path = tmp_path / "net.bin"
    save_params(path, params)

    loaded = load_params(path)
    assert loaded.spec == small_spec
    np.testing.assert_array_equal(loaded.flat, params.flat)
    assert path.stat().st_size == 20 + 8 * small_spec.parameter_count


def test_header_layout(small_spec):
    data = encode_params(init_params(small_spec, seed=5))
    magic, version, input_dim, layers, width = struct.unpack_from("<4sIIII", data)
    assert (magic, version) == (b"PMNN", 1)
    assert (input_dim, layers, width) == (2, 2, 6)


def test_bad_magic(small_spec):
    data = bytearray(encode_params(init_params(small_spec, seed=5)))
    data[:4] = b"XXXX"
    with pytest.raises(InvalidArgumentError):
        decode_params(bytes(data))


def test_bad_version(small_spec):
    data = bytearray(encode_params(init_params(small_spec, seed=5)))
    struct.pack_into("<I", data, 4, 9)
    with pytest.raises(InvalidArgumentError):
        decode_params(bytes(data))


def test_truncated_header(small_spec):
    data = encode_params(init_params(small_spec, seed=5))
    with pytest.raises(InvalidArgumentError):
        decode_params(data[:3])


def test_truncated_payload(small_spec):
    data = encode_params(init_params(small_spec, seed=5))
    with pytest.raises(InvalidArgumentError):
        decode_params(data[:-8])


def test_identity_networks_are_not_written():
    spec = NetworkSpec(input_dim=1, hidden_layers=1, width=2, activation=Activation.identity)
    with pytest.raises(InvalidArgumentError):
        encode_params(init_params(spec, seed=0))


def test_missing_file(tmp_path):
    with pytest.raises(OutputError):
        load_params(tmp_path / "absent.bin")
    with pytest.raises(OutputError):
        save_params(tmp_path / "no" / "dir.bin", init_params(NetworkSpec(input_dim=1), seed=0))
