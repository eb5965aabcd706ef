"""
Connected components of a blue edge set.

Only blue sites (incident to at least one blue edge) receive a component id;
components are numbered in order of their smallest site index so the report
does not depend on edge processing order.
"""

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import structlog

from seglat.core.exceptions import GeometryError, ModelError
from seglat.cluster.union_find import DisplacementUnionFind
from seglat.lattice.geometry import Geometry
from seglat.models.coloring import BlueEdgeSet

logger = structlog.get_logger(__name__)

NO_COMPONENT = -1


@dataclass(frozen=True, eq=False)
class ClusterReport:
    """Component labels, sizes and per-axis wrap flags."""

    geometry: Geometry
    component_of: np.ndarray
    sizes: np.ndarray
    wrap_flags: np.ndarray
    largest_fraction: float

    @property
    def n_components(self) -> int:
        return int(self.sizes.size)

    def cluster_of(self, site: int) -> Optional[int]:
        self.geometry.check_site(site)
        label = int(self.component_of.reshape(-1)[site])
        return None if label == NO_COMPONENT else label

    def touching(self, axis: int, coordinate: int) -> List[int]:
        """Ids of the components with a site on the face x_axis == coordinate."""
        if not 0 <= axis < self.geometry.d or not 0 <= coordinate < self.geometry.lengths[axis]:
            raise GeometryError("Face outside geometry", lengths=self.geometry.lengths)
        face = np.take(self.component_of, coordinate, axis=axis)
        return sorted(int(c) for c in np.unique(face) if c != NO_COMPONENT)

    @property
    def blue_site_count(self) -> int:
        return int(self.sizes.sum())


def _neighbours(geometry: Geometry, sites: np.ndarray, axis: int) -> np.ndarray:
    coords = list(np.unravel_index(sites, geometry.shape))
    coords[axis] = (coords[axis] + 1) % geometry.lengths[axis]
    return np.ravel_multi_index(tuple(coords), geometry.shape)


def clusters(
    geometry: Geometry, edges: BlueEdgeSet, edge_order: Optional[np.ndarray] = None
) -> ClusterReport:
    """Union-find labelling with wrap detection; `edge_order` permutes edge processing."""
    if edges.geometry != geometry:
        raise ModelError("Edge set defined on another geometry", model=edges.model_tag.value)

    edge_list = edges.edge_list()
    if edge_order is not None:
        edge_list = edge_list[np.asarray(edge_order)]
    sites, axes = edge_list[:, 0], edge_list[:, 1]
    targets = np.empty_like(sites)
    for axis in range(geometry.d):
        chosen = axes == axis
        targets[chosen] = _neighbours(geometry, sites[chosen], axis)

    steps = [tuple(int(axis == k) for k in range(geometry.d)) for axis in range(geometry.d)]
    forest = DisplacementUnionFind(geometry.n_sites, geometry.d)
    for u, v, axis in zip(sites.tolist(), targets.tolist(), axes.tolist()):
        forest.union(u, v, steps[axis])

    blue = edges.blue_sites().reshape(-1)
    blue_idx = np.flatnonzero(blue)
    roots = np.array([forest.find(s)[0] for s in blue_idx.tolist()], dtype=np.int64)
    # blue_idx is ascending, so first occurrences follow smallest site index
    unique_roots, first, labels = np.unique(roots, return_index=True, return_inverse=True)
    rank = np.empty(unique_roots.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(unique_roots.size)
    labels = rank[labels]
    ordered_roots = unique_roots[np.argsort(first, kind="stable")]

    component_of = np.full(geometry.n_sites, NO_COMPONENT, dtype=np.int64)
    component_of[blue_idx] = labels
    sizes = np.bincount(labels, minlength=unique_roots.size).astype(np.int64)
    wrap_flags = np.array(
        [forest.wraps(int(r)) for r in ordered_roots], dtype=bool
    ).reshape(-1, geometry.d)
    if not geometry.is_torus:
        wrap_flags[:] = False

    largest = int(sizes.max()) if sizes.size else 0
    component_of = component_of.reshape(geometry.shape)
    component_of.flags.writeable = False
    report = ClusterReport(
        geometry=geometry,
        component_of=component_of,
        sizes=sizes,
        wrap_flags=wrap_flags,
        largest_fraction=largest / geometry.n_sites,
    )
    logger.debug(
        "Clusters labelled",
        components=report.n_components,
        largest=largest,
        wrapping=int(wrap_flags.any(axis=1).sum()),
    )
    return report


def wraps_any(report: ClusterReport) -> bool:
    """True iff some component winds around the torus along at least one axis."""
    return bool(report.wrap_flags.any())


def breadth_first_components(geometry: Geometry, edges: BlueEdgeSet) -> List[Tuple[int, Tuple[bool, ...]]]:
    """
    Reference labelling by breadth-first search over unwrapped coordinates.

    Returns (size, wraps per axis) for each component, sorted. A component
    wraps along an axis when a site is reached twice at unwrapped positions
    differing along that axis.
    """
    shape = geometry.shape
    adjacency: dict[int, list[tuple[int, int, int]]] = {}
    for site, axis in edges.edge_list().tolist():
        coords = list(np.unravel_index(site, shape))
        coords[axis] = (coords[axis] + 1) % shape[axis]
        other = int(np.ravel_multi_index(tuple(coords), shape))
        adjacency.setdefault(site, []).append((other, axis, 1))
        adjacency.setdefault(other, []).append((site, axis, -1))

    seen: dict[int, Tuple[int, ...]] = {}
    found = []
    for start in sorted(adjacency):
        if start in seen:
            continue
        seen[start] = (0,) * geometry.d
        queue = deque([start])
        size = 0
        wraps = [False] * geometry.d
        while queue:
            site = queue.popleft()
            size += 1
            here = seen[site]
            for other, axis, sign in adjacency[site]:
                there = tuple(c + (sign if k == axis else 0) for k, c in enumerate(here))
                if other not in seen:
                    seen[other] = there
                    queue.append(other)
                else:
                    for k, (a, b) in enumerate(zip(seen[other], there)):
                        if a != b:
                            wraps[k] = True
        found.append((size, tuple(wraps) if geometry.is_torus else (False,) * geometry.d))
    return sorted(found)
