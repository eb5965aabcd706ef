"""
Exact block-event probabilities of the renormalisation argument.

For a block of side 6r around the origin, A_{e1} asks for a blue vertical
segment in one of the r columns [r, 2r) whose endpoints lie at distance 2r to
3r - 1 above and below the axis; C_{e1} asks for a horizontal one joining the
block to its right neighbour, in one of 2r/3 rows.
"""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from seglat.core.exceptions import ParameterError


class BlockParams(BaseModel):
    """Block scale r and densities; q = 1 - p."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    r: int = Field(..., ge=1, description="Block scale")
    p: float = Field(..., gt=0.0, lt=1.0, description="Site density")
    lam: float = Field(..., ge=0.0, le=1.0, description="Segment colour probability")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @model_validator(mode="after")
    def check_density(self) -> "BlockParams":
        if not 0.0 < self.q < 1.0:
            raise ValueError("q = 1 - p must lie in (0, 1)")
        return self

    @classmethod
    def from_q(cls, r: int, q: float, lam: float) -> "BlockParams":
        return cls(r=r, p=1.0 - q, lam=lam)


def block_r(p: float) -> int:
    """r with q^r closest to 1/2: max(1, round(1 / log2(1/q)))."""
    if not 0.0 < p <= 1.0:
        raise ParameterError("p must lie in (0,1]", field="p", value=p)
    q = 1.0 - p
    if q == 0.0:
        return 1
    return max(1, round(1.0 / math.log2(1.0 / q)))


def _crossing(q: float, lam: float, near: int, far: int) -> float:
    """(lam/q) (q^near (1 - q^far))^2: probability a given line crosses."""
    return (lam / q) * (q**near * (1.0 - q**far)) ** 2


def _check_base(base: float, event: str) -> None:
    if not 0.0 <= base <= 1.0:
        raise ParameterError(f"Base of the {event} formula outside [0,1]", field="base", value=base)


def block_event_A_prob(bp: BlockParams) -> float:
    """P(A_{e1}) = 1 - [1 - (lam/q)(q^{2r}(1 - q^r))^2]^r."""
    base = 1.0 - _crossing(bp.q, bp.lam, 2 * bp.r, bp.r)
    _check_base(base, "A")
    return 1.0 - base**bp.r


def _third(r: int) -> int:
    if r % 3:
        raise ParameterError("C events need r to be a multiple of 3", field="r", value=r)
    return r // 3


def block_event_C_prob(bp: BlockParams) -> float:
    """P(C_{e1}) = 1 - [1 - (lam/q)(q^{2r}(1 - q^{2r/3}))^2]^{2r/3}."""
    lines = 2 * _third(bp.r)
    base = 1.0 - _crossing(bp.q, bp.lam, 2 * bp.r, lines)
    _check_base(base, "C")
    return 1.0 - base**lines


def good_block_lower_bound(bp: BlockParams) -> float:
    """Union bound 1 - 4(1 - P(A_{e1})) - 4(1 - P(C_{e1})), clamped to [0, 1]."""
    bound = 1.0 - 4.0 * (1.0 - block_event_A_prob(bp)) - 4.0 * (1.0 - block_event_C_prob(bp))
    return min(1.0, max(0.0, bound))


def c_event_defined(r: int) -> bool:
    return r % 3 == 0
