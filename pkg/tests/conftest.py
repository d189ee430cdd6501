import numpy as np
import pytest

from pmnn.logging_config import setup_logging
from pmnn.neural.schemas import LbfgsConfig, NetworkSpec
from pmnn.problems.examples import example1, example2, example3


@pytest.fixture(scope="session", autouse=True)
def _structured_logging() -> None:
    setup_logging()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def small_spec() -> NetworkSpec:
    return NetworkSpec(input_dim=2, hidden_layers=2, width=6)


@pytest.fixture
def quick_lbfgs() -> LbfgsConfig:
    return LbfgsConfig(max_iterations=5)


@pytest.fixture
def fode():
    return example1(0.5)


@pytest.fixture
def diffusion_1d():
    return example2(0.5)


@pytest.fixture
def diffusion_2d():
    return example3(0.5)
