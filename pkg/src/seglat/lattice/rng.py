"""Counter-based random streams.

Every random draw in seglat comes from a numpy Philox generator keyed by a
SeedSequence built from integers only, so a stream is a pure function of its
key: (master_seed, stream_id, role) for replicates, (seed, role) for a single
sampling call. Roles keep site randomness apart from colour randomness, which
is what quenched experiments need (fix the SITES stream, vary the rest).
"""

from enum import IntEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

__all__ = ["StreamRole", "RngStream", "generator_for", "derive_seed"]

_MASK64 = (1 << 64) - 1


class StreamRole(IntEnum):
    """Role tags mixed into every key."""

    SITES = 1
    CHOICES = 2
    COLORS = 3
    MIXED = 4
    BLOCKS = 5


def _entropy(*parts: int) -> list[int]:
    return [int(part) & _MASK64 for part in parts]


def generator_for(seed: int, role: StreamRole) -> np.random.Generator:
    """Generator for one sampling call keyed by (seed, role)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(_entropy(seed, role))))


def derive_seed(*parts: int) -> int:
    """Collapse integers into one 64-bit seed."""
    state = np.random.SeedSequence(_entropy(*parts)).generate_state(1, dtype=np.uint64)
    return int(state[0])


class RngStream(BaseModel):
    """Reproducible stream owned by one replicate."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    master_seed: int = Field(..., ge=0, description="Seed of the whole run")
    stream_id: int = Field(..., ge=0, description="Replicate index or role tag")

    def seed_for(self, role: StreamRole) -> int:
        """64-bit seed for the sampling call playing `role` in this replicate."""
        return derive_seed(self.master_seed, self.stream_id, role)

    def generator(self, role: StreamRole) -> np.random.Generator:
        return generator_for(self.seed_for(role), role)
