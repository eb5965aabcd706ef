"""
Integration test fixtures.

Integration tests run full Monte Carlo estimates across lattice, models,
cluster and montecarlo. They share one process pool per session.
"""

import os
from typing import Generator

import pytest

from seglat.montecarlo import ReplicateRunner


@pytest.fixture(scope="session")
def runner() -> Generator[ReplicateRunner, None, None]:
    """Process pool sized to the machine, at most four workers."""
    with ReplicateRunner(threads=min(4, os.cpu_count() or 1)) as pool:
        yield pool
