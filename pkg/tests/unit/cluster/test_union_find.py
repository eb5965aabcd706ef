"""
Unit tests for the displacement-tracking union-find.
"""

import pytest

from seglat.cluster import DisplacementUnionFind

pytestmark = pytest.mark.unit


class TestDisplacementUnionFind:
    def test_singletons(self):
        """Test that fresh sites are their own roots."""
        forest = DisplacementUnionFind(5, 2)
        assert forest.find(3) == (3, (0, 0))
        assert forest.is_singleton(3)
        assert forest.wraps(3) == [False, False]

    def test_offsets_follow_steps(self):
        """Test offsets follow steps."""
        forest = DisplacementUnionFind(4, 1)
        for a in range(3):
            forest.union(a, a + 1, (1,))
        assert forest.find(3) == (0, (3,))
        assert forest.size(2) == 4

    def test_ring_closure_wraps(self):
        """Test ring closure wraps."""
        forest = DisplacementUnionFind(4, 1)
        for a in range(3):
            forest.union(a, a + 1, (1,))
        assert forest.wraps(0) == [False]
        forest.union(3, 0, (1,))
        assert forest.wraps(2) == [True]

    def test_contractible_cycle_does_not_wrap(self):
        """Test contractible cycle does not wrap."""
        # unit square 0-1-3-2 on a 2x2 grid of indices
        forest = DisplacementUnionFind(4, 2)
        forest.union(0, 1, (0, 1))
        forest.union(0, 2, (1, 0))
        forest.union(1, 3, (1, 0))
        forest.union(2, 3, (0, 1))
        assert forest.size(0) == 4
        assert forest.wraps(3) == [False, False]

    def test_merging_keeps_wrap_flags(self):
        """Test merging keeps wrap flags."""
        forest = DisplacementUnionFind(6, 2)
        forest.union(0, 1, (1, 0))
        forest.union(1, 0, (1, 0))
        forest.union(4, 5, (0, 1))
        forest.union(5, 0, (0, 1))
        assert forest.wraps(4) == [True, False]
        assert forest.size(4) == 4
