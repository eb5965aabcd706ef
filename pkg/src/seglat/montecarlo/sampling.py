"""One replicate of each model, keyed by an RngStream."""

from typing import Optional

from seglat.core.exceptions import ModelError
from seglat.lattice.geometry import Geometry, make_geometry
from seglat.lattice.rng import RngStream, StreamRole
from seglat.lattice.sites import SiteConfig, sample_sites
from seglat.models.coloring import (
    BlueEdgeSet,
    ModelTag,
    corrupted_compass_turquoise,
    independent_blue,
    mixed_percolation,
    one_choice_blue,
    restrict_independent_to_occupied_pairs,
    sample_choices,
)
from seglat.models.segments import feasible_segments
from seglat.montecarlo.models import ModelSpec


def geometry_for(spec: ModelSpec, L: int) -> Geometry:
    return make_geometry(spec.d, [L] * spec.d, spec.boundary)


def sample_edges(
    spec: ModelSpec,
    geometry: Geometry,
    stream: RngStream,
    config: Optional[SiteConfig] = None,
) -> BlueEdgeSet:
    """Blue edges of one replicate; a given `config` fixes the sites (quenched)."""
    if config is None:
        config = sample_sites(geometry, spec.p, stream.seed_for(StreamRole.SITES))

    if spec.model == ModelTag.MIXED:
        return mixed_percolation(config, spec.lam, stream.seed_for(StreamRole.MIXED))
    if spec.model == ModelTag.TURQUOISE:
        choices = sample_choices(config, stream.seed_for(StreamRole.CHOICES))
        return corrupted_compass_turquoise(config, choices)

    segments = feasible_segments(config)
    if spec.model == ModelTag.ONE_CHOICE:
        _, edges = one_choice_blue(config, segments, stream.seed_for(StreamRole.CHOICES))
        return edges
    if spec.model in (ModelTag.INDEPENDENT, ModelTag.MIXED_DERIVED):
        edges = independent_blue(config, segments, spec.lam, stream.seed_for(StreamRole.COLORS))
        if spec.model == ModelTag.MIXED_DERIVED:
            return restrict_independent_to_occupied_pairs(config, edges)
        return edges
    raise ModelError("No sampler for model", model=spec.model.value)
