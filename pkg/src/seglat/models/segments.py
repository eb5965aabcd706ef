"""
Feasible segments F(omega).

Two occupied sites on a common coordinate line with only unoccupied sites
strictly between them form a feasible pair, identified with the segment of
unit edges joining them. Every segment is stored once, keyed by its starting
endpoint a (the endpoint from which it extends in the + direction), so its id
is axis * n_sites + a. The array `edge_segment[axis]` maps each unit edge
(x, x + e_axis) to the id of the segment containing it, or -1.

Torus lines with exactly one occupied site v give one full-cycle segment with
a = b = v. Free boxes drop segments that reach a face before an occupied site.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from seglat.lattice.geometry import Geometry
from seglat.lattice.sites import SiteConfig

NO_SEGMENT = -1


class Segment(BaseModel):
    """One feasible pair (a, b) along `axis`."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0, description="axis * n_sites + a")
    axis: int = Field(..., ge=0)
    line: Tuple[int, ...] = Field(..., description="Coordinates of the line on the other axes")
    a: int = Field(..., ge=0, description="Starting endpoint")
    b: int = Field(..., ge=0, description="Next occupied site in the + direction")
    wraps: bool = Field(False, description="Full cycle or crosses the periodic seam")
    interior_count: int = Field(..., ge=0, description="Unoccupied sites strictly between")


def _line_view(array: np.ndarray, axis: int) -> np.ndarray:
    """(n_lines, L) view with `axis` last."""
    moved = np.moveaxis(array, axis, -1)
    return moved.reshape(-1, moved.shape[-1])


def _from_line_view(lines: np.ndarray, shape: Tuple[int, ...], axis: int) -> np.ndarray:
    moved_shape = tuple(np.delete(np.array(shape), axis)) + (shape[axis],)
    return np.moveaxis(lines.reshape(moved_shape), -1, axis)


@dataclass(frozen=True, eq=False)
class SegmentSet:
    """All feasible segments of a configuration in array form."""

    geometry: Geometry
    edge_segment: np.ndarray
    ids: np.ndarray
    b: np.ndarray
    wraps: np.ndarray
    interior: np.ndarray
    _lookup: Dict[int, int] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return int(self.ids.size)

    def axis_of(self, segment_id: int) -> int:
        return segment_id // self.geometry.n_sites

    def start_of(self, segment_id: int) -> int:
        return segment_id % self.geometry.n_sites

    def position(self, segment_id: int) -> int:
        if not self._lookup:
            self._lookup.update({int(s): i for i, s in enumerate(self.ids)})
        return self._lookup[segment_id]

    def segment(self, segment_id: int) -> Segment:
        i = self.position(segment_id)
        axis = self.axis_of(segment_id)
        a = self.start_of(segment_id)
        coords = self.geometry.coords(a)
        return Segment(
            id=segment_id,
            axis=axis,
            line=tuple(c for k, c in enumerate(coords) if k != axis),
            a=a,
            b=int(self.b[i]),
            wraps=bool(self.wraps[i]),
            interior_count=int(self.interior[i]),
        )

    @cached_property
    def segments(self) -> List[Segment]:
        return [self.segment(int(s)) for s in self.ids]

    @cached_property
    def per_site_index(self) -> Dict[int, List[int]]:
        """Site -> ids of the segments having it as an endpoint."""
        index: Dict[int, List[int]] = {}
        n = self.geometry.n_sites
        for s, b in zip(self.ids.tolist(), self.b.tolist()):
            a = s % n
            index.setdefault(a, []).append(s)
            if b != a:
                index.setdefault(b, []).append(s)
        return index

    def edges_of(self, segment_id: int) -> np.ndarray:
        """Boolean (d, *shape) mask of the unit edges lying in one segment."""
        return self.edge_segment == segment_id

    def edge_count(self) -> int:
        return int((self.edge_segment != NO_SEGMENT).sum())


def feasible_segments(config: SiteConfig) -> SegmentSet:
    """Exactly F(omega) for the window."""
    geometry = config.geometry
    n = geometry.n_sites
    site_index = np.arange(n, dtype=np.int64).reshape(geometry.shape)
    edge_segment = np.full((geometry.d, *geometry.shape), NO_SEGMENT, dtype=np.int64)

    ids: list[np.ndarray] = []
    ends: list[np.ndarray] = []
    wraps: list[np.ndarray] = []
    interior: list[np.ndarray] = []

    for axis in range(geometry.d):
        length = geometry.lengths[axis]
        occ = _line_view(config.occupied, axis)
        sites = _line_view(site_index, axis)
        pos = np.arange(length)

        occ_pos = np.where(occ, pos, -1)
        prev = np.maximum.accumulate(occ_pos, axis=1)
        first_at_or_after = np.minimum.accumulate(np.where(occ, pos, length)[:, ::-1], axis=1)[:, ::-1]
        next_after = np.full_like(first_at_or_after, length)
        next_after[:, :-1] = first_at_or_after[:, 1:]

        if geometry.is_torus:
            last_occ = occ_pos.max(axis=1, keepdims=True)
            first_occ = first_at_or_after[:, :1]
            prev = np.where(prev < 0, last_occ, prev)
            # past the last occupied site the next one is reached through the seam
            next_after = np.where(next_after >= length, first_occ + length, next_after)
            valid = prev >= 0
        else:
            valid = (prev >= 0) & (next_after < length)
            valid[:, -1] = False

        start = np.take_along_axis(sites, np.clip(prev, 0, length - 1), axis=1)
        seg_lines = np.where(valid, axis * n + start, NO_SEGMENT)
        edge_segment[axis] = _from_line_view(seg_lines, geometry.shape, axis)

        starts = occ & valid
        line_idx, a_pos = np.nonzero(starts)
        b_unwrapped = next_after[line_idx, a_pos]
        ids.append(axis * n + sites[line_idx, a_pos])
        ends.append(sites[line_idx, b_unwrapped % length])
        wraps.append(b_unwrapped >= length)
        interior.append(b_unwrapped - a_pos - 1)

    order_ids = np.concatenate(ids) if ids else np.empty(0, dtype=np.int64)
    order = np.argsort(order_ids, kind="stable")
    edge_segment.flags.writeable = False
    return SegmentSet(
        geometry=geometry,
        edge_segment=edge_segment,
        ids=order_ids[order],
        b=np.concatenate(ends)[order],
        wraps=np.concatenate(wraps)[order],
        interior=np.concatenate(interior)[order],
    )
