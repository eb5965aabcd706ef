"""
Connected components of blue edge sets and torus wrap detection.

Usage:
    from seglat.cluster import clusters, wraps_any

    report = clusters(geometry, blue)
    percolates = wraps_any(report)
"""

from .report import NO_COMPONENT, ClusterReport, breadth_first_components, clusters, wraps_any
from .union_find import DisplacementUnionFind

__all__ = [
    "NO_COMPONENT",
    "ClusterReport",
    "clusters",
    "wraps_any",
    "breadth_first_components",
    "DisplacementUnionFind",
]
