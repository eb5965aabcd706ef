"""
Colouring rules for feasible segments and the two couplings.

Edges are stored as a boolean array blue[axis][x] for the unit edge
(x, x + e_axis); on a torus the edge leaving the last site of a line wraps to
the first. All rules are pure functions of (config, seeds).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Optional

import numpy as np
import orjson
import structlog

from seglat.core.exceptions import ModelError, ParameterError, SerializationError
from seglat.lattice.geometry import Direction, Geometry, make_geometry
from seglat.lattice.rng import StreamRole, generator_for
from seglat.lattice.sites import (
    SiteConfig,
    check_probability,
    decode_bits,
    encode_bits,
    geometry_from_header,
    geometry_header,
)
from seglat.models.segments import NO_SEGMENT, SegmentSet

logger = structlog.get_logger(__name__)

UNOCCUPIED = -1


class ModelTag(str, Enum):
    """Which rule produced an edge set."""

    ONE_CHOICE = "one-choice"
    INDEPENDENT = "independent"
    TURQUOISE = "turquoise"
    MIXED = "mixed"
    MIXED_DERIVED = "mixed-derived"


@dataclass(frozen=True, eq=False)
class ChoiceAssignment:
    """Chosen direction index per occupied site, UNOCCUPIED elsewhere."""

    geometry: Geometry
    chosen: np.ndarray
    choice_seed: Optional[int] = None

    def direction_of(self, site: int) -> Optional[Direction]:
        self.geometry.check_site(site)
        index = int(self.chosen.reshape(-1)[site])
        return None if index == UNOCCUPIED else Direction.from_index(index)

    def counts(self) -> np.ndarray:
        """How many occupied sites chose each of the 2d directions."""
        chosen = self.chosen[self.chosen != UNOCCUPIED]
        return np.bincount(chosen.astype(np.int64), minlength=2 * self.geometry.d)


@dataclass(frozen=True, eq=False)
class BlueEdgeSet:
    """Blue flag per unit edge with the provenance of the rule that set it."""

    geometry: Geometry
    blue: np.ndarray
    model_tag: ModelTag
    params: Dict[str, Optional[float]] = field(default_factory=dict)
    seeds: Dict[str, Optional[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        expected = (self.geometry.d, *self.geometry.shape)
        if self.blue.shape != expected or self.blue.dtype != np.bool_:
            raise ModelError(
                "Blue edges must be a boolean array of shape (d, *shape)",
                model=self.model_tag.value,
            )
        self.blue.flags.writeable = False

    @property
    def edge_count(self) -> int:
        return int(self.blue.sum())

    def edge_mask(self) -> np.ndarray:
        """Edges that exist in the geometry."""
        return self.geometry.edge_mask()

    def edge_fraction(self) -> float:
        return self.edge_count / self.geometry.n_edges()

    def is_blue(self, site: int, axis: int) -> bool:
        self.geometry.check_site(site)
        return bool(self.blue[axis].reshape(-1)[site])

    def blue_sites(self) -> np.ndarray:
        """Boolean array of sites incident to at least one blue edge."""
        incident = np.zeros(self.geometry.shape, dtype=bool)
        for axis in range(self.geometry.d):
            incident |= self.blue[axis]
            # the free-box edge at the last index never exists, so the roll brings in False
            incident |= np.roll(self.blue[axis], 1, axis=axis)
        return incident

    def issubset(self, other: "BlueEdgeSet") -> bool:
        return self.geometry == other.geometry and not np.any(self.blue & ~other.blue)

    def edge_list(self) -> np.ndarray:
        """(k, 2) array of (site, axis) pairs for the blue edges."""
        axes, *coords = np.nonzero(self.blue)
        sites = np.ravel_multi_index(tuple(coords), self.geometry.shape)
        return np.stack([sites, axes], axis=1).astype(np.int64)


def _neighbour(array: np.ndarray, axis: int) -> np.ndarray:
    """Value at x + e_axis, periodic."""
    return np.roll(array, -1, axis=axis)


def _blue_from_segments(segments: SegmentSet, segment_blue: np.ndarray) -> np.ndarray:
    edge_segment = segments.edge_segment
    present = edge_segment != NO_SEGMENT
    return present & segment_blue[np.where(present, edge_segment, 0)]


def sample_choices(config: SiteConfig, choice_seed: int) -> ChoiceAssignment:
    """Uniform direction out of the 2d for every occupied site."""
    geometry = config.geometry
    rng = generator_for(choice_seed, StreamRole.CHOICES)
    draws = rng.integers(0, 2 * geometry.d, size=geometry.shape, dtype=np.int8)
    chosen = np.where(config.occupied, draws, UNOCCUPIED).astype(np.int8)
    chosen.flags.writeable = False
    return ChoiceAssignment(geometry=geometry, chosen=chosen, choice_seed=int(choice_seed))


def green_segments(segments: SegmentSet, choices: ChoiceAssignment) -> np.ndarray:
    """Boolean array over segment ids: declared green by at least one endpoint."""
    geometry = segments.geometry
    n = geometry.n_sites
    green = np.zeros(geometry.d * n, dtype=bool)
    chosen = choices.chosen
    for axis in range(geometry.d):
        forward = segments.edge_segment[axis]
        # segment entering x from x - e_axis
        backward = np.roll(forward, 1, axis=axis)
        if not geometry.is_torus:
            index = [slice(None)] * geometry.d
            index[axis] = 0
            backward = backward.copy()
            backward[tuple(index)] = NO_SEGMENT
        for ids in (forward[chosen == 2 * axis], backward[chosen == 2 * axis + 1]):
            green[ids[ids != NO_SEGMENT]] = True
    return green


def one_choice_blue(
    config: SiteConfig, segments: SegmentSet, choice_seed: int
) -> tuple[ChoiceAssignment, BlueEdgeSet]:
    """
    One-choice model.

    Each occupied site draws one of its 2d directions and declares the
    segment met in that direction green; a segment is blue iff some endpoint
    declared it green. On a torus line with a single occupied site both
    directions along that axis select the full-cycle segment.
    """
    if segments.geometry != config.geometry:
        raise ModelError("Segments were built on another geometry", model=ModelTag.ONE_CHOICE.value)
    choices = sample_choices(config, choice_seed)
    blue = _blue_from_segments(segments, green_segments(segments, choices))
    edges = BlueEdgeSet(
        geometry=config.geometry,
        blue=blue,
        model_tag=ModelTag.ONE_CHOICE,
        params={"p": config.p, "lambda": None},
        seeds={"site_seed": config.site_seed, "choice_seed": int(choice_seed)},
    )
    return choices, edges


def independent_blue(
    config: SiteConfig, segments: SegmentSet, lam: float, color_seed: int
) -> BlueEdgeSet:
    """Independent model: every feasible segment blue with probability lam."""
    check_probability(lam, "lambda", allow_zero=True)
    if segments.geometry != config.geometry:
        raise ModelError("Segments were built on another geometry", model=ModelTag.INDEPENDENT.value)
    geometry = config.geometry
    rng = generator_for(color_seed, StreamRole.COLORS)
    segment_blue = rng.random(geometry.d * geometry.n_sites) < lam
    return BlueEdgeSet(
        geometry=geometry,
        blue=_blue_from_segments(segments, segment_blue),
        model_tag=ModelTag.INDEPENDENT,
        params={"p": config.p, "lambda": float(lam)},
        seeds={"site_seed": config.site_seed, "color_seed": int(color_seed)},
    )


def corrupted_compass_turquoise(config: SiteConfig, choices: ChoiceAssignment) -> BlueEdgeSet:
    """
    Turquoise edges of the corrupted compass model.

    Edge (u, v) is turquoise iff an endpoint is unoccupied, or an occupied
    endpoint's chosen direction points along the edge. Built from the same
    choices as one_choice_blue, it contains every one-choice blue edge.
    """
    geometry = config.geometry
    if choices.geometry != geometry or not np.array_equal(choices.chosen != UNOCCUPIED, config.occupied):
        raise ModelError(
            "Choices must be defined exactly on the occupied sites", model=ModelTag.TURQUOISE.value
        )
    occ = config.occupied
    chosen = choices.chosen
    mask = geometry.edge_mask()
    turquoise = np.zeros_like(mask)
    for axis in range(geometry.d):
        corrupted = ~occ | ~_neighbour(occ, axis)
        points_forward = chosen == 2 * axis
        points_back = _neighbour(chosen == 2 * axis + 1, axis)
        turquoise[axis] = (corrupted | points_forward | points_back) & mask[axis]
    return BlueEdgeSet(
        geometry=geometry,
        blue=turquoise,
        model_tag=ModelTag.TURQUOISE,
        params={"p": config.p, "lambda": None},
        seeds={"site_seed": config.site_seed, "choice_seed": choices.choice_seed},
    )


def _occupied_pairs(config: SiteConfig) -> np.ndarray:
    geometry = config.geometry
    mask = geometry.edge_mask()
    occ = config.occupied
    pairs = np.zeros_like(mask)
    for axis in range(geometry.d):
        pairs[axis] = occ & _neighbour(occ, axis) & mask[axis]
    return pairs


def mixed_percolation(config: SiteConfig, lam: float, color_seed: int) -> BlueEdgeSet:
    """Mixed site-bond model: an edge is open iff both ends occupied and a lam-coin succeeds."""
    check_probability(lam, "lambda", allow_zero=True)
    geometry = config.geometry
    rng = generator_for(color_seed, StreamRole.MIXED)
    coins = rng.random((geometry.d, *geometry.shape)) < lam
    return BlueEdgeSet(
        geometry=geometry,
        blue=coins & _occupied_pairs(config),
        model_tag=ModelTag.MIXED,
        params={"p": config.p, "lambda": float(lam)},
        seeds={"site_seed": config.site_seed, "color_seed": int(color_seed)},
    )


def restrict_independent_to_occupied_pairs(config: SiteConfig, blue: BlueEdgeSet) -> BlueEdgeSet:
    """The set G: blue edges of the independent model whose endpoints are both occupied."""
    if blue.model_tag != ModelTag.INDEPENDENT:
        raise ModelError(
            "Restriction applies to independent-model edge sets only", model=blue.model_tag.value
        )
    if blue.geometry != config.geometry:
        raise ModelError("Edge set and configuration use different geometries")
    return BlueEdgeSet(
        geometry=config.geometry,
        blue=blue.blue & _occupied_pairs(config),
        model_tag=ModelTag.MIXED_DERIVED,
        params=dict(blue.params),
        seeds=dict(blue.seeds),
    )


def restrict_to_plane(blue: BlueEdgeSet, fixed: Mapping[int, int]) -> BlueEdgeSet:
    """
    Edges of the slice where the axes in `fixed` are pinned to given coordinates.

    The independent model restricted to a slice is the lower-dimensional
    independent model with the same (p, lambda); the one-choice model is not.
    """
    geometry = blue.geometry
    if not fixed:
        return blue
    for axis, coordinate in fixed.items():
        if not 0 <= axis < geometry.d or not 0 <= coordinate < geometry.lengths[axis]:
            raise ParameterError("Slice coordinate outside geometry", field="fixed", value=dict(fixed))
    kept = [axis for axis in range(geometry.d) if axis not in fixed]
    if not kept:
        raise ParameterError("A slice must keep at least one axis", field="fixed", value=dict(fixed))
    index = tuple(fixed.get(axis, slice(None)) for axis in range(geometry.d))
    sliced = np.stack([blue.blue[axis][index] for axis in kept])
    plane = make_geometry(len(kept), [geometry.lengths[axis] for axis in kept], geometry.boundary)
    return BlueEdgeSet(
        geometry=plane,
        blue=np.ascontiguousarray(sliced),
        model_tag=blue.model_tag,
        params=dict(blue.params),
        seeds={**blue.seeds},
    )


def params_dict(edges: BlueEdgeSet) -> Dict[str, Any]:
    return {"model_tag": edges.model_tag.value, "params": edges.params, "seeds": edges.seeds}


def blue_edge_set_to_dict(edges: BlueEdgeSet) -> Dict[str, Any]:
    return {
        **geometry_header(edges.geometry),
        **params_dict(edges),
        "bits": encode_bits(edges.blue),
    }


def blue_edge_set_from_dict(data: Dict[str, Any]) -> BlueEdgeSet:
    try:
        geometry = geometry_from_header(data)
        shape = (geometry.d, *geometry.shape)
        blue = decode_bits(data["bits"], geometry.d * geometry.n_sites, shape)
        return BlueEdgeSet(
            geometry=geometry,
            blue=blue,
            model_tag=ModelTag(data["model_tag"]),
            params=dict(data.get("params") or {}),
            seeds=dict(data.get("seeds") or {}),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError("Malformed blue edge set", artifact="BlueEdgeSet", original_error=e) from e


def blue_edge_set_to_json(edges: BlueEdgeSet) -> bytes:
    """Same header as the site configuration plus model_tag, params and seeds."""
    return orjson.dumps(blue_edge_set_to_dict(edges), option=orjson.OPT_SORT_KEYS)


def blue_edge_set_from_json(payload: bytes | str) -> BlueEdgeSet:
    try:
        data = orjson.loads(payload)
    except orjson.JSONDecodeError as e:
        raise SerializationError("Invalid JSON", artifact="BlueEdgeSet", original_error=e) from e
    return blue_edge_set_from_dict(data)
