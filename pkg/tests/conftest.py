"""
Pytest configuration and fixtures for seglat.

Fixtures:
- configure_test_logging: structlog at WARNING, restored after every test (the CLI reconfigures it)
- clean_config: fresh global configuration per test, single-threaded
- torus_2d / box_2d / torus_3d: small geometries
- half_filled_torus: a seeded site configuration on torus_2d
"""

import logging

import pytest
import structlog

from seglat.core.config import SeglatConfig, SimulationConfig, reset_config, set_config
from seglat.lattice import Boundary, make_geometry, sample_sites


@pytest.fixture(autouse=True)
def configure_test_logging():
    """Keep log output quiet and on stderr during tests."""
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(logging.WARNING),
        logger_factory=structlog.PrintLoggerFactory(),
        cache_logger_on_first_use=False,
    )
    yield
    structlog.reset_defaults()


@pytest.fixture(autouse=True)
def clean_config(monkeypatch):
    """Every test starts from defaults with replicates run inline."""
    monkeypatch.delenv("SEGLAT_THREADS", raising=False)
    reset_config()
    set_config(SeglatConfig(simulation=SimulationConfig(threads=1)))
    yield
    reset_config()


@pytest.fixture
def torus_2d():
    return make_geometry(2, [8, 8], Boundary.TORUS)


@pytest.fixture
def box_2d():
    return make_geometry(2, [8, 8], Boundary.FREE)


@pytest.fixture
def torus_3d():
    return make_geometry(3, [6, 6, 6], Boundary.TORUS)


@pytest.fixture
def half_filled_torus(torus_2d):
    return sample_sites(torus_2d, 0.5, site_seed=11)
