"""
SVG drawings of two-dimensional boxes.

Blue edges are strokes between site centres, occupied sites are dots. The
output is plain text built element by element, so the same sample always
renders to the same bytes.
"""

from typing import Dict, List, Optional, Set, Union

import numpy as np

from seglat.cluster.report import NO_COMPONENT, clusters
from seglat.core.exceptions import GeometryError
from seglat.lattice.sites import SiteConfig
from seglat.models.coloring import BlueEdgeSet

SVG_NS = "http://www.w3.org/2000/svg"

BLUE = "#4a7fd6"
DARK_BLUE = "#102a6b"
SITE = "#444444"

Attr = Union[str, int, float]


def _number(value: Attr) -> Attr:
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def _element(tag: str, **attr: Attr) -> str:
    props = " ".join(f'{key.replace("_", "-")}="{_number(value)}"' for key, value in attr.items())
    return f"<{tag} {props} />"


def render_svg(
    edges: BlueEdgeSet,
    config: Optional[SiteConfig] = None,
    highlight_left: bool = False,
    omit_plain: bool = False,
    cell: int = 10,
) -> str:
    """
    SVG text for a free two-dimensional box.

    Segments running off the box are already absent from a free sample, so
    the drawing shows them cut at the boundary. With `highlight_left` the
    clusters touching x = 0 are drawn darker; with `omit_plain` occupied
    sites without a blue edge are left out.
    """
    geometry = edges.geometry
    if geometry.d != 2:
        raise GeometryError("Only two-dimensional boxes can be rendered", lengths=geometry.lengths)
    if geometry.is_torus:
        raise GeometryError("Rendering needs a free boundary", lengths=geometry.lengths)
    if config is not None and config.geometry != geometry:
        raise GeometryError("Site configuration and edges disagree on the window", lengths=geometry.lengths)

    width, height = geometry.lengths
    margin = cell

    def x(i: int) -> int:
        return margin + i * cell

    def y(j: int) -> int:
        return margin + (height - 1 - j) * cell

    dark: Set[int] = set()
    component_of: Optional[np.ndarray] = None
    if highlight_left:
        report = clusters(geometry, edges)
        dark = set(report.touching(0, 0))
        component_of = report.component_of

    strokes: Dict[str, List[str]] = {BLUE: [], DARK_BLUE: []}
    for axis, i, j in zip(*np.nonzero(edges.blue)):
        i, j = int(i), int(j)
        i2, j2 = (i + 1, j) if axis == 0 else (i, j + 1)
        colour = BLUE
        if component_of is not None and int(component_of[i, j]) != NO_COMPONENT and int(component_of[i, j]) in dark:
            colour = DARK_BLUE
        strokes[colour].append(_element("line", x1=x(i), y1=y(j), x2=x(i2), y2=y(j2)))

    dots: List[str] = []
    if config is not None:
        shown = config.occupied & edges.blue_sites() if omit_plain else config.occupied
        for i, j in zip(*np.nonzero(shown)):
            dots.append(_element("circle", cx=x(int(i)), cy=y(int(j)), r=cell / 5))

    lines = [
        f'<svg xmlns="{SVG_NS}" width="{2 * margin + (width - 1) * cell}" '
        f'height="{2 * margin + (height - 1) * cell}">',
        _element("rect", x=0, y=0, width="100%", height="100%", fill="white"),
    ]
    for colour, group in strokes.items():
        if group:
            lines.append(f'<g stroke="{colour}" stroke-width="{_number(cell / 4)}" stroke-linecap="round">')
            lines.extend(group)
            lines.append("</g>")
    if dots:
        lines.append(f'<g fill="{SITE}">')
        lines.extend(dots)
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
