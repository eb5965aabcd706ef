"""
Lattice windows, site configurations and seeded random streams.

Usage:
    from seglat.lattice import make_geometry, sample_sites

    geometry = make_geometry(2, [64, 64], "torus")
    config = sample_sites(geometry, p=0.5, site_seed=7)
"""

from .geometry import Boundary, Direction, Geometry, all_directions, make_geometry
from .rng import RngStream, StreamRole, derive_seed, generator_for
from .sites import (
    SiteConfig,
    bias_bound,
    check_bias_bound,
    check_probability,
    next_occupied,
    sample_sites,
    site_config_from_json,
    site_config_to_json,
)

__all__ = [
    "Boundary",
    "Direction",
    "Geometry",
    "make_geometry",
    "all_directions",
    "RngStream",
    "StreamRole",
    "derive_seed",
    "generator_for",
    "SiteConfig",
    "sample_sites",
    "next_occupied",
    "bias_bound",
    "check_bias_bound",
    "check_probability",
    "site_config_to_json",
    "site_config_from_json",
]
