import math

import numpy as np
import pytest
import torch

from pmnn.exceptions import InvalidArgumentError
from pmnn.neural import (
    Activation,
    NetworkField,
    NetworkParams,
    NetworkSpec,
    forward,
    forward_jet,
    init_params,
)


def test_parameter_count():
    spec = NetworkSpec(input_dim=2, hidden_layers=5, width=20)
    assert spec.parameter_count == 1761
    assert spec.layer_shapes[0] == (2, 20)
    assert spec.layer_shapes[-1] == (20, 1)


def test_defaults_come_from_settings():
    spec = NetworkSpec(input_dim=1)
    assert (spec.hidden_layers, spec.width) == (5, 20)


def test_init_is_seeded(small_spec):
    first = init_params(small_spec, seed=7)
    second = init_params(small_spec, seed=7)
    other = init_params(small_spec, seed=8)
    np.testing.assert_array_equal(first.flat, second.flat)
    assert not np.array_equal(first.flat, other.flat)


def test_init_glorot_bounds_and_zero_biases(small_spec):
    params = init_params(small_spec, seed=3)
    offset = 0
    for fan_in, fan_out in small_spec.layer_shapes:
        weights = params.flat[offset : offset + fan_in * fan_out]
        offset += fan_in * fan_out
        assert np.all(np.abs(weights) <= math.sqrt(6.0 / (fan_in + fan_out)))
        np.testing.assert_array_equal(params.flat[offset : offset + fan_out], 0.0)
        offset += fan_out


def test_params_validate_length(small_spec):
    with pytest.raises(InvalidArgumentError):
        NetworkParams(spec=small_spec, flat=np.zeros(3))


def test_params_reject_non_finite(small_spec):
    flat = np.zeros(small_spec.parameter_count)
    flat[0] = np.nan
    with pytest.raises(InvalidArgumentError):
        NetworkParams(spec=small_spec, flat=flat)


def test_forward_matches_batched_values(small_spec, rng):
    params = init_params(small_spec, seed=1)
    points = rng.uniform(-1.0, 1.0, size=(5, 2))
    batched = NetworkField.from_params(params).values(torch.as_tensor(points))
    for point, value in zip(points, batched.detach().numpy(), strict=True):
        assert forward(params, point) == pytest.approx(value, rel=1e-14)


def test_forward_dimension_mismatch(small_spec):
    params = init_params(small_spec, seed=1)
    with pytest.raises(InvalidArgumentError):
        forward(params, [0.1, 0.2, 0.3])


@pytest.mark.parametrize("seed", range(10))
def test_jet_matches_finite_differences(seed):
    spec = NetworkSpec(input_dim=3, hidden_layers=3, width=8)
    rng = np.random.default_rng(seed)
    params = NetworkParams(spec=spec, flat=rng.normal(0.0, 0.5, size=spec.parameter_count))
    point = rng.uniform(-1.0, 1.0, size=3)
    jet = forward_jet(params, point, [0, 1, 2])

    assert jet.value == pytest.approx(forward(params, point), rel=1e-14)
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = 1e-6
        d1 = (forward(params, point + step) - forward(params, point - step)) / 2e-6
        assert jet.d1[axis] == pytest.approx(d1, abs=1e-6)

        step[axis] = 1e-4
        d2 = (
            forward(params, point + step) - 2.0 * jet.value + forward(params, point - step)
        ) / 1e-8
        assert jet.d2[axis] == pytest.approx(d2, abs=1e-6)


def test_jet_tracks_subset_in_given_order(small_spec):
    params = init_params(small_spec, seed=4)
    full = forward_jet(params, [0.3, 0.6], [0, 1])
    swapped = forward_jet(params, [0.3, 0.6], [1, 0])
    assert swapped.d1.tolist() == pytest.approx(full.d1[::-1].tolist(), rel=1e-14)
    assert swapped.d2.tolist() == pytest.approx(full.d2[::-1].tolist(), rel=1e-14)


def test_empty_tracking_gives_value_only(small_spec):
    params = init_params(small_spec, seed=4)
    jet = forward_jet(params, [0.3, 0.6], [])
    assert jet.d1.shape == (0,)
    assert jet.value == pytest.approx(forward(params, [0.3, 0.6]), rel=1e-14)


@pytest.mark.parametrize("tracked", [[0, 0], [2], [-1]])
def test_bad_tracking(small_spec, tracked):
    params = init_params(small_spec, seed=4)
    with pytest.raises(InvalidArgumentError):
        forward_jet(params, [0.3, 0.6], tracked)


def test_identity_network_is_affine():
    spec = NetworkSpec(input_dim=2, hidden_layers=3, width=4, activation=Activation.identity)
    params = init_params(spec, seed=11)
    jet = forward_jet(params, [0.2, -0.4], [0, 1])
    np.testing.assert_array_equal(jet.d2, [0.0, 0.0])
    origin = forward(params, [0.0, 0.0])
    slope_x = forward(params, [1.0, 0.0]) - origin
    assert jet.d1[0] == pytest.approx(slope_x, abs=1e-12)


def test_hand_built_network():
    spec = NetworkSpec(input_dim=1, hidden_layers=1, width=1)
    params = NetworkParams(spec=spec, flat=np.array([1.0, 0.0, 1.0, 0.0]))
    y = math.tanh(0.5)
    assert forward(params, [0.5]) == pytest.approx(0.46211716, abs=1e-8)
    jet = forward_jet(params, [0.5], [0])
    assert jet.d1[0] == pytest.approx(1.0 - y**2, rel=1e-14)
    assert jet.d1[0] == pytest.approx(0.78644773, abs=1e-8)
    assert jet.d2[0] == pytest.approx(-2.0 * y * (1.0 - y**2), rel=1e-14)


def test_zero_network():
    spec = NetworkSpec(input_dim=1)
    params = NetworkParams(spec=spec, flat=np.zeros(spec.parameter_count))
    assert spec.parameter_count == 1741
    jet = forward_jet(params, [0.3], [0])
    assert (jet.value, jet.d1[0], jet.d2[0]) == (0.0, 0.0, 0.0)
