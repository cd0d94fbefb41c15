"""Shared fixtures"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

# Import registry to auto-register suites
import src.core.registry  # noqa: F401, E402

from src.core.random import lab_rng  # noqa: E402
from src.core.run_config import RunConfig  # noqa: E402
from src.cube import BiasedCube, CubeFunction  # noqa: E402
from src.gauss import gauss_hermite_rule  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    return lab_rng(2024, 0)


@pytest.fixture(scope="session")
def gh_rule():
    return gauss_hermite_rule()


@pytest.fixture
def symmetric_bit() -> BiasedCube:
    return BiasedCube(1, 0.5)


@pytest.fixture
def indicator(symmetric_bit: BiasedCube) -> CubeFunction:
    """1{x = +1} on the symmetric bit"""
    return CubeFunction(symmetric_bit, [0.0, 1.0])


@pytest.fixture
def small_config():
    def make(suite: str, **overrides) -> RunConfig:
        values = {"suite": suite, "seed": 7, "instances": 3, "threads": 2}
        values.update(overrides)
        return RunConfig(**values)

    return make
