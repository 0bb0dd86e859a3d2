"""Pytest configuration and fixtures."""

from collections.abc import Iterator
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from shearlab.core.config import get_settings
from shearlab.main import app
from shearlab.models.maps import FourSlitMap, NGonParams, RegularNGonMap, SlitMapParams
from shearlab.models.numerics import QuadratureConfig


@pytest.fixture(autouse=True)
def clear_settings_cache() -> Iterator[None]:
    """Reload settings for every test so environment overrides take effect."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def client() -> TestClient:
    """Create a test client for the FastAPI application."""
    return TestClient(app)


@pytest.fixture
def cfg() -> QuadratureConfig:
    """Return the default quadrature configuration."""
    return QuadratureConfig()


@pytest.fixture
def slit_c0() -> SlitMapParams:
    """Return the A = B = 1, c = 0 slit map parameters."""
    return SlitMapParams.from_gamma_fraction(1.0, 1.0, Fraction(1, 2))


@pytest.fixture
def slit_map(slit_c0: SlitMapParams) -> FourSlitMap:
    """Return the A = B = 1, c = 0 slit map."""
    return FourSlitMap(params=slit_c0)


@pytest.fixture
def triangle() -> RegularNGonMap:
    """Return the regular triangle map."""
    return RegularNGonMap(params=NGonParams(n=3))


@pytest.fixture
def square() -> RegularNGonMap:
    """Return the square map."""
    return RegularNGonMap(params=NGonParams(n=4))
