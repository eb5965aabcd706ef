"""
Unit tests for windows, site indexing and directions.
"""

import numpy as np
import pytest

from seglat.core.exceptions import GeometryError
from seglat.lattice import Boundary, Direction, all_directions, make_geometry

pytestmark = pytest.mark.unit


class TestDirection:
    def test_index_order(self):
        """Test the direction index order."""
        names = [str(Direction.from_index(i)) for i in range(6)]
        assert names == ["+e0", "-e0", "+e1", "-e1", "+e2", "-e2"]

    def test_index_round_trip_and_negate(self):
        """Test index round trip and negate."""
        direction = Direction(axis=1, sign=-1)
        assert direction.index == 3
        assert direction.negate() == Direction(axis=1, sign=1)

    def test_invalid_sign(self):
        """Test that a zero sign is rejected."""
        with pytest.raises(GeometryError):
            Direction(axis=0, sign=2)


class TestMakeGeometry:
    """Validation of window shapes."""

    def test_torus(self):
        """Test a torus geometry and its strides."""
        geometry = make_geometry(2, [8, 6])
        assert geometry.is_torus
        assert geometry.n_sites == 48
        assert geometry.strides == (6, 1)

    def test_rejects_wrong_arity(self):
        """Test rejects wrong arity."""
        with pytest.raises(GeometryError):
            make_geometry(3, [8, 8])

    def test_rejects_short_side(self):
        """Test rejects short side."""
        with pytest.raises(GeometryError) as exc_info:
            make_geometry(2, [8, 3])
        assert exc_info.value.context["lengths"] == [8, 3]

    def test_boundary_from_string(self):
        """Test boundary from string."""
        assert make_geometry(2, [5, 5], "free").boundary == Boundary.FREE

    def test_all_directions(self):
        """Test that there are 2d directions."""
        assert len(all_directions(make_geometry(3, [4, 4, 4]))) == 6


class TestIndexing:
    def test_coords_and_site(self, torus_2d):
        """Test coords and site."""
        site = torus_2d.site((3, 5))
        assert site == 3 * 8 + 5
        assert torus_2d.coords(site) == (3, 5)

    def test_torus_wraps_coordinates(self, torus_2d):
        """Test torus wraps coordinates."""
        assert torus_2d.site((-1, 8)) == torus_2d.site((7, 0))

    def test_free_box_rejects_outside(self, box_2d):
        """Test free box rejects outside."""
        with pytest.raises(GeometryError):
            box_2d.site((8, 0))

    def test_step(self, torus_2d, box_2d):
        """Test one step on a torus and at a free face."""
        corner = torus_2d.site((7, 0))
        assert torus_2d.step(corner, Direction(axis=0, sign=1)) == torus_2d.site((0, 0))
        assert box_2d.step(box_2d.site((7, 0)), Direction(axis=0, sign=1)) is None

    def test_check_site(self, torus_2d):
        """Test that out-of-range sites are rejected."""
        with pytest.raises(GeometryError):
            torus_2d.check_site(64)

    def test_line_positions(self, torus_2d):
        """Test the sites of one lattice line."""
        line = list(torus_2d.line_positions(torus_2d.site((2, 3)), axis=1))
        assert line == [torus_2d.site((2, c)) for c in range(8)]


class TestEdgeMask:
    def test_torus_has_all_edges(self, torus_2d):
        """Test torus has all edges."""
        assert torus_2d.n_edges() == 2 * 64

    def test_free_box_drops_last_edge_per_line(self, box_2d):
        """Test free box drops last edge per line."""
        mask = box_2d.edge_mask()
        assert box_2d.n_edges() == 2 * 8 * 7
        assert not mask[0, -1, :].any()
        assert not mask[1, :, -1].any()
        assert np.all(mask[0, :-1, :])
