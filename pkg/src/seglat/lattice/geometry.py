"""
Finite windows of Z^d.

A Geometry is a box of side lengths L_1..L_d, either periodic (Torus) or
cut off at its faces (Free). Sites are numbered in C order, so the last axis
varies fastest and the flat index of (x_1, ..., x_d) is sum x_i * stride_i.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from seglat.core.exceptions import GeometryError

MIN_LENGTH = 4
_MAX_SITES = 2**62


class Boundary(str, Enum):
    """Boundary condition of a window."""

    TORUS = "torus"
    FREE = "free"


@dataclass(frozen=True, order=True)
class Direction:
    """One of the 2d unit vectors +e_axis / -e_axis."""

    axis: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise GeometryError(f"Direction sign must be +1 or -1, got {self.sign}")
        if self.axis < 0:
            raise GeometryError(f"Direction axis must be non-negative, got {self.axis}")

    @property
    def index(self) -> int:
        """Position in the canonical order +e_0, -e_0, +e_1, -e_1, ..."""
        return 2 * self.axis + (0 if self.sign > 0 else 1)

    @classmethod
    def from_index(cls, index: int) -> "Direction":
        return cls(axis=index // 2, sign=1 if index % 2 == 0 else -1)

    def negate(self) -> "Direction":
        return Direction(axis=self.axis, sign=-self.sign)

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}e{self.axis}"


class Geometry(BaseModel):
    """Validated finite window with canonical site indexing."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    d: int = Field(..., ge=1, description="Number of axes")
    lengths: Tuple[int, ...] = Field(..., description="Side length per axis")
    boundary: Boundary = Field(Boundary.TORUS, description="Torus or free box")

    @model_validator(mode="after")
    def check_lengths(self) -> "Geometry":
        if len(self.lengths) != self.d:
            raise ValueError(f"Expected {self.d} lengths, got {len(self.lengths)}")
        if any(length < MIN_LENGTH for length in self.lengths):
            raise ValueError(f"Every side length must be >= {MIN_LENGTH}")
        if int(np.prod([float(n) for n in self.lengths])) >= _MAX_SITES:
            raise ValueError("Site count exceeds 64-bit index arithmetic")
        return self

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.lengths

    @property
    def n_sites(self) -> int:
        n = 1
        for length in self.lengths:
            n *= length
        return n

    @property
    def is_torus(self) -> bool:
        return self.boundary == Boundary.TORUS

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        strides = [1] * self.d
        for axis in range(self.d - 2, -1, -1):
            strides[axis] = strides[axis + 1] * self.lengths[axis + 1]
        return tuple(strides)

    def directions(self) -> list[Direction]:
        """The 2d directions in index order."""
        return [Direction.from_index(i) for i in range(2 * self.d)]

    def check_site(self, site: int) -> None:
        if not 0 <= site < self.n_sites:
            raise GeometryError("Site index out of range", lengths=self.lengths, site=site)

    def coords(self, site: int) -> Tuple[int, ...]:
        self.check_site(site)
        return tuple(int(c) for c in np.unravel_index(site, self.shape))

    def site(self, coords: Sequence[int]) -> int:
        """Flat index of a coordinate tuple; coordinates wrap on the torus."""
        if len(coords) != self.d:
            raise GeometryError(f"Expected {self.d} coordinates", lengths=self.lengths)
        index = 0
        for axis, (c, length) in enumerate(zip(coords, self.lengths)):
            if self.is_torus:
                c %= length
            elif not 0 <= c < length:
                raise GeometryError(
                    f"Coordinate {c} outside free box along axis {axis}",
                    lengths=self.lengths,
                )
            index += c * self.strides[axis]
        return index

    def step(self, site: int, direction: Direction) -> Optional[int]:
        """Neighbour of `site` along `direction`, or None past a free face."""
        coords = list(self.coords(site))
        coords[direction.axis] += direction.sign
        c = coords[direction.axis]
        length = self.lengths[direction.axis]
        if not self.is_torus and not 0 <= c < length:
            return None
        return self.site(coords)

    def line_positions(self, site: int, axis: int) -> Iterator[int]:
        """Flat indices of the coordinate line through `site` along `axis`, in order."""
        coords = list(self.coords(site))
        for c in range(self.lengths[axis]):
            coords[axis] = c
            yield self.site(coords)

    def edge_mask(self) -> np.ndarray:
        """Boolean array (d, *shape): True where the edge (x, x + e_axis) exists."""
        mask = np.ones((self.d, *self.shape), dtype=bool)
        if not self.is_torus:
            for axis in range(self.d):
                index = [slice(None)] * self.d
                index[axis] = -1
                mask[(axis, *index)] = False
        return mask

    def n_edges(self) -> int:
        return int(self.edge_mask().sum())


def make_geometry(d: int, lengths: Sequence[int], boundary: Boundary | str = Boundary.TORUS) -> Geometry:
    """Validate and build a Geometry."""
    if d < 1 or not lengths:
        raise GeometryError("A geometry needs at least one axis", lengths=lengths or [])
    if len(lengths) != d:
        raise GeometryError(f"Expected {d} lengths, got {len(lengths)}", lengths=lengths)
    too_short = [n for n in lengths if n < MIN_LENGTH]
    if too_short:
        raise GeometryError(
            f"Side lengths must be >= {MIN_LENGTH}", lengths=lengths
        )
    try:
        return Geometry(d=d, lengths=tuple(int(n) for n in lengths), boundary=Boundary(boundary))
    except ValueError as e:
        raise GeometryError(str(e), lengths=lengths) from e


def all_directions(geometry: Geometry) -> list[Direction]:
    return geometry.directions()
