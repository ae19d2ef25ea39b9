import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qha.grid import LineGrid, PhaseGrid

settings.register_profile("qha", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qha")


@pytest.fixture(scope="session")
def pg256():
    return PhaseGrid.from_length(256, 12.0)


@pytest.fixture(scope="session")
def pg64():
    return PhaseGrid.from_length(64, 12.0)


@pytest.fixture(scope="session")
def pg32():
    return PhaseGrid.from_length(32, 8.0)


@pytest.fixture(scope="session")
def line64(pg64) -> LineGrid:
    return pg64.x


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def cnormal(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
