"""
Unit tests for SVG rendering.
"""

import numpy as np
import pytest

from seglat.cli.render import BLUE, DARK_BLUE, SITE, render_svg
from seglat.core.exceptions import GeometryError
from seglat.lattice import SiteConfig
from seglat.models import BlueEdgeSet, ModelTag

pytestmark = pytest.mark.unit


@pytest.fixture
def edges(box_2d):
    blue = np.zeros((2, 8, 8), dtype=bool)
    blue[0, 0, 3] = True  # (0,3)-(1,3), touches x = 0
    blue[1, 5, 5] = True  # (5,5)-(5,6)
    return BlueEdgeSet(geometry=box_2d, blue=blue, model_tag=ModelTag.INDEPENDENT)


@pytest.fixture
def sites(box_2d):
    occupied = np.zeros((8, 8), dtype=bool)
    occupied[0, 3] = occupied[1, 3] = occupied[4, 4] = True
    return SiteConfig.from_occupied(box_2d, occupied)


class TestRenderSvg:
    def test_plain_drawing(self, edges):
        """Test the SVG frame and edge lines."""
        svg = render_svg(edges)
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg" width="90" height="90">')
        assert svg.endswith("</svg>\n")
        assert '<line x1="10" y1="50" x2="20" y2="50" />' in svg
        assert f'stroke="{BLUE}"' in svg
        assert DARK_BLUE not in svg
        assert "<circle" not in svg

    def test_highlight_left(self, edges):
        """Test highlighting the cluster of the left face."""
        svg = render_svg(edges, highlight_left=True)
        dark_group = svg.split(f'<g stroke="{DARK_BLUE}"')[1].split("</g>")[0]
        assert 'x1="10"' in dark_group
        assert 'x1="60"' not in dark_group

    def test_sites(self, edges, sites):
        """Test drawing occupied sites."""
        svg = render_svg(edges, sites)
        assert f'<g fill="{SITE}">' in svg
        assert svg.count("<circle") == 3
        assert '<circle cx="50" cy="40" r="2" />' in svg

    def test_omit_plain(self, edges, sites):
        """Test that plain edges can be left out."""
        svg = render_svg(edges, sites, omit_plain=True)
        assert svg.count("<circle") == 2
        assert 'cx="50" cy="40"' not in svg

    def test_deterministic(self, edges, sites):
        """Test that equal inputs render equal SVG."""
        assert render_svg(edges, sites, highlight_left=True) == render_svg(edges, sites, highlight_left=True)

    def test_rejects_torus(self, torus_2d):
        """Test that torus samples are rejected."""
        blue = BlueEdgeSet(geometry=torus_2d, blue=np.zeros((2, 8, 8), dtype=bool), model_tag=ModelTag.MIXED)
        with pytest.raises(GeometryError):
            render_svg(blue)

    def test_rejects_other_window(self, edges, half_filled_torus):
        """Test rejects other window."""
        with pytest.raises(GeometryError):
            render_svg(edges, half_filled_torus)
