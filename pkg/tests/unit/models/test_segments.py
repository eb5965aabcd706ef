"""
Unit tests for feasible segments.
"""

import numpy as np
import pytest

from seglat.lattice import SiteConfig, make_geometry, sample_sites
from seglat.models import NO_SEGMENT, feasible_segments

pytestmark = pytest.mark.unit


def _config(geometry, sites):
    occupied = np.zeros(geometry.shape, dtype=bool)
    for coords in sites:
        occupied[coords] = True
    return SiteConfig.from_occupied(geometry, occupied)


class TestFeasibleSegments:
    def test_full_lattice_gives_unit_segments(self, torus_2d):
        """Test full lattice gives unit segments."""
        config = sample_sites(torus_2d, 1.0, 0)
        segments = feasible_segments(config)
        assert len(segments) == 2 * 64
        assert segments.edge_count() == 2 * 64
        assert set(segments.interior.tolist()) == {0}

    def test_two_sites_on_a_torus_line(self, torus_2d):
        """Test two sites on a torus line."""
        config = _config(torus_2d, [(1, 0), (5, 0)])
        segments = feasible_segments(config)
        vertical = [s for s in segments.segments if s.axis == 0]
        assert len(vertical) == 2
        first = next(s for s in vertical if s.a == torus_2d.site((1, 0)))
        assert first.b == torus_2d.site((5, 0))
        assert first.interior_count == 3
        assert not first.wraps
        seam = next(s for s in vertical if s.a == torus_2d.site((5, 0)))
        assert seam.wraps
        assert seam.interior_count == 3

    def test_every_edge_on_an_occupied_line_is_covered(self, torus_2d):
        """Test every edge on an occupied line is covered."""
        config = _config(torus_2d, [(1, 0), (5, 0)])
        segments = feasible_segments(config)
        assert np.all(segments.edge_segment[0][:, 0] != NO_SEGMENT)
        # column 1 has no occupied site along axis 0
        assert np.all(segments.edge_segment[0][:, 1] == NO_SEGMENT)

    def test_single_site_gives_full_cycle(self, torus_2d):
        """Test single site gives full cycle."""
        site = torus_2d.site((2, 0))
        segments = feasible_segments(_config(torus_2d, [(2, 0)]))
        cycle = segments.segment(0 * torus_2d.n_sites + site)
        assert cycle.a == cycle.b == site
        assert cycle.wraps
        assert cycle.interior_count == 7
        assert np.all(segments.edge_segment[0][:, 0] == cycle.id)

    def test_free_box_drops_open_ends(self, box_2d):
        """Test free box drops open ends."""
        config = _config(box_2d, [(2, 0), (5, 0)])
        segments = feasible_segments(config)
        vertical = [s for s in segments.segments if s.axis == 0]
        assert [(s.a, s.b) for s in vertical] == [(box_2d.site((2, 0)), box_2d.site((5, 0)))]
        column = segments.edge_segment[0][:, 0]
        assert list(column != NO_SEGMENT) == [False, False, True, True, True, False, False, False]

    def test_segment_ids_encode_axis_and_start(self, half_filled_torus):
        """Test segment ids encode axis and start."""
        segments = feasible_segments(half_filled_torus)
        n = half_filled_torus.geometry.n_sites
        for segment in segments.segments:
            assert segment.id == segment.axis * n + segment.a
            assert half_filled_torus.is_occupied(segment.a)
            assert half_filled_torus.is_occupied(segment.b)

    def test_per_site_index(self, half_filled_torus):
        """Test per site index."""
        segments = feasible_segments(half_filled_torus)
        index = segments.per_site_index
        occupied = np.flatnonzero(half_filled_torus.flat)
        # on a torus every occupied site ends segments along both axes
        for site in occupied.tolist():
            assert len(index[site]) >= 2

    def test_edges_of(self, torus_2d):
        """Test the edges of one segment."""
        config = _config(torus_2d, [(1, 0), (5, 0)])
        segments = feasible_segments(config)
        mask = segments.edges_of(torus_2d.site((1, 0)))
        assert mask.sum() == 4
        assert mask[0, 1:5, 0].all()

    def test_three_dimensional_count(self):
        """Test three dimensional count."""
        geometry = make_geometry(3, [4, 4, 4])
        config = sample_sites(geometry, 1.0, 3)
        assert len(feasible_segments(config)) == 3 * 64
