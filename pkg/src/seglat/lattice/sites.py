"""
Site percolation configurations.

A SiteConfig is the occupancy field omega on a Geometry, sampled as i.i.d.
Bernoulli(p) from a seeded Philox stream so it can be regenerated bit for bit
from (geometry, p, site_seed).
"""

import base64
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import orjson
import structlog

from seglat.core.exceptions import BiasBoundError, ParameterError, SerializationError
from seglat.lattice.geometry import Boundary, Direction, Geometry, make_geometry
from seglat.lattice.rng import StreamRole, generator_for

logger = structlog.get_logger(__name__)


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class SiteConfig:
    """Occupancy bit per site plus the provenance needed to regenerate it."""

    geometry: Geometry
    occupied: np.ndarray
    p: float
    site_seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.occupied.shape != self.geometry.shape or self.occupied.dtype != np.bool_:
            raise ParameterError(
                "Occupancy must be a boolean array of the geometry's shape",
                field="occupied",
                value=self.occupied.shape,
            )
        _readonly(self.occupied)

    @classmethod
    def from_occupied(cls, geometry: Geometry, occupied: np.ndarray) -> "SiteConfig":
        """Wrap a hand-built occupancy array; p is its empirical density."""
        occupied = np.array(occupied, dtype=bool).reshape(geometry.shape)
        return cls(geometry=geometry, occupied=occupied, p=float(occupied.mean()))

    @property
    def flat(self) -> np.ndarray:
        return self.occupied.reshape(-1)

    @property
    def occupied_count(self) -> int:
        return int(self.occupied.sum())

    def is_occupied(self, site: int) -> bool:
        self.geometry.check_site(site)
        return bool(self.flat[site])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SiteConfig):
            return NotImplemented
        return (
            self.geometry == other.geometry
            and self.p == other.p
            and self.site_seed == other.site_seed
            and np.array_equal(self.occupied, other.occupied)
        )


def check_probability(value: float, name: str, *, allow_zero: bool) -> None:
    low_ok = value >= 0.0 if allow_zero else value > 0.0
    if not (low_ok and value <= 1.0):
        interval = "[0,1]" if allow_zero else "(0,1]"
        raise ParameterError(f"{name} must lie in {interval}", field=name, value=value)


def sample_sites(geometry: Geometry, p: float, site_seed: int) -> SiteConfig:
    """I.i.d. Bernoulli(p) occupancy, deterministic in (geometry, p, site_seed)."""
    check_probability(p, "p", allow_zero=False)
    rng = generator_for(site_seed, StreamRole.SITES)
    occupied = rng.random(geometry.shape) < p
    return SiteConfig(geometry=geometry, occupied=occupied, p=float(p), site_seed=int(site_seed))


def next_occupied(config: SiteConfig, site: int, direction: Direction) -> Tuple[Optional[int], int]:
    """
    First occupied site strictly beyond `site` along `direction`.

    Returns (site, gap) where gap counts the unoccupied sites skipped. On a
    torus the scan stops on returning to `site` (None, L - 1); in a free box
    it stops at the face (None, distance to the face).
    """
    geometry = config.geometry
    geometry.check_site(site)
    if direction.axis >= geometry.d:
        raise ParameterError("Direction axis outside geometry", field="direction", value=str(direction))

    length = geometry.lengths[direction.axis]
    coords = list(geometry.coords(site))
    start = coords[direction.axis]
    flat = config.flat
    gap = 0
    for step in range(1, length):
        c = start + direction.sign * step
        if geometry.is_torus:
            c %= length
        elif not 0 <= c < length:
            return None, gap
        coords[direction.axis] = c
        candidate = geometry.site(coords)
        if flat[candidate]:
            return candidate, gap
        gap += 1
    return None, gap


def bias_bound(p: float, length: int) -> float:
    """(1-p)^(L-2): chance that a gap scan wraps around a line of length L."""
    return float((1.0 - p) ** (length - 2))


def check_bias_bound(
    p: float, geometry: Geometry, tolerance: float, *, strict: bool = True
) -> bool:
    """Verify the torus is large enough for local-event estimation at density p."""
    length = min(geometry.lengths)
    bound = bias_bound(p, length)
    if bound < tolerance:
        return True
    if strict:
        raise BiasBoundError(p=p, length=length, bound=bound, tolerance=tolerance)
    logger.warning("Torus wrap-around bias above tolerance", p=p, L=length, bound=bound)
    return False


def encode_bits(bits: np.ndarray) -> str:
    return base64.b64encode(np.packbits(bits.reshape(-1)).tobytes()).decode("ascii")


def decode_bits(payload: str, count: int, shape: Tuple[int, ...]) -> np.ndarray:
    raw = np.frombuffer(base64.b64decode(payload, validate=True), dtype=np.uint8)
    if raw.size != (count + 7) // 8:
        raise SerializationError("Bit-field length does not match the geometry", artifact="bits")
    return np.unpackbits(raw, count=count).astype(bool).reshape(shape)


def geometry_header(geometry: Geometry) -> Dict[str, Any]:
    return {"d": geometry.d, "lengths": list(geometry.lengths), "boundary": geometry.boundary.value}


def geometry_from_header(header: Dict[str, Any]) -> Geometry:
    return make_geometry(header["d"], header["lengths"], Boundary(header["boundary"]))


def site_config_to_dict(config: SiteConfig) -> Dict[str, Any]:
    return {
        **geometry_header(config.geometry),
        "p": config.p,
        "site_seed": config.site_seed,
        "bits": encode_bits(config.occupied),
    }


def site_config_from_dict(data: Dict[str, Any]) -> SiteConfig:
    try:
        geometry = geometry_from_header(data)
        occupied = decode_bits(data["bits"], geometry.n_sites, geometry.shape)
        return SiteConfig(
            geometry=geometry,
            occupied=occupied,
            p=float(data["p"]),
            site_seed=data.get("site_seed"),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError("Malformed site configuration", artifact="SiteConfig", original_error=e) from e


def site_config_to_json(config: SiteConfig) -> bytes:
    """JSON header {d, lengths, boundary, p, site_seed} plus base64 bit-field."""
    return orjson.dumps(site_config_to_dict(config), option=orjson.OPT_SORT_KEYS)


def site_config_from_json(payload: bytes | str) -> SiteConfig:
    try:
        data = orjson.loads(payload)
    except orjson.JSONDecodeError as e:
        raise SerializationError("Invalid JSON", artifact="SiteConfig", original_error=e) from e
    return site_config_from_dict(data)
