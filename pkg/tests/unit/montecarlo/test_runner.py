"""
Unit tests for the ordered replicate runner.
"""

from functools import partial

import pytest

from seglat.core.config import SeglatConfig, SimulationConfig, set_config
from seglat.core.exceptions import ParameterError
from seglat.montecarlo import ReplicateRunner

pytestmark = pytest.mark.unit

POWERS = partial(pow, 2)


class TestReplicateRunner:
    def test_inline_order(self):
        """Test that a single worker keeps order."""
        assert ReplicateRunner(threads=1).map(POWERS, 5) == [1, 2, 4, 8, 16]

    def test_pool_preserves_order(self):
        """Test pool preserves order."""
        with ReplicateRunner(threads=2, chunk_size=1) as runner:
            assert runner.map(POWERS, 10) == [2**i for i in range(10)]

    def test_pool_without_context(self):
        """Test pool without context."""
        assert ReplicateRunner(threads=2).map(POWERS, 4) == [1, 2, 4, 8]

    def test_threads_from_config(self):
        """Test threads from config."""
        set_config(SeglatConfig(simulation=SimulationConfig(threads=3, chunk_size=2)))
        runner = ReplicateRunner()
        assert (runner.threads, runner.chunk_size) == (3, 2)

    def test_rejects_zero_threads(self):
        """Test rejects zero threads."""
        with pytest.raises(ParameterError):
            ReplicateRunner(threads=0)
