"""Phase-region labels of the independent model in the (p, lambda) plane."""

import math
from enum import Enum
from typing import Callable, Optional

import structlog

from seglat.analytic.branching import subcritical_bound
from seglat.analytic.local import Number, _check_dimension
from seglat.core.config import ThresholdConfig, get_config
from seglat.lattice.sites import check_probability

logger = structlog.get_logger(__name__)

MixedCurve = Callable[[float], Optional[float]]


class PhaseRegion(str, Enum):
    """Which rigorous criterion, if any, decides percolation."""

    NO_PERCOLATION_A = "NoPercolation_A"
    PERCOLATES_B = "Percolates_B"
    PERCOLATES_C_LINE = "Percolates_C_line"
    UNKNOWN = "Unknown"


def classify_region(
    d: int,
    p: Number,
    lam: Number,
    mixed_curve: Optional[MixedCurve] = None,
    thresholds: Optional[ThresholdConfig] = None,
) -> PhaseRegion:
    """
    Label (d, p, lambda).

    A: lambda < p/(2d-1), the cluster at the origin is dominated by a
    subcritical branching process. C_line: p = 1 and lambda above the bond
    threshold of Z^d. B: lambda above the mixed-model curve at p (when one
    is supplied), above the hexagonal bond threshold, or above c log(1/q)
    for a configured constant c.
    """
    _check_dimension(d, 2)
    check_probability(p, "p", allow_zero=False)
    check_probability(lam, "lambda", allow_zero=True)
    thresholds = thresholds or get_config().thresholds

    if lam < subcritical_bound(d, p):
        return PhaseRegion.NO_PERCOLATION_A
    if p == 1 and lam > thresholds.bond_threshold(d):
        return PhaseRegion.PERCOLATES_C_LINE

    if mixed_curve is not None:
        curve = mixed_curve(float(p))
        if curve is not None and lam > curve:
            return PhaseRegion.PERCOLATES_B
    if thresholds.use_hexagonal_bound and lam > thresholds.hexagonal_bond:
        return PhaseRegion.PERCOLATES_B
    if thresholds.log_constant is not None and p < 1:
        if lam > thresholds.log_constant * math.log(1.0 / (1.0 - float(p))):
            return PhaseRegion.PERCOLATES_B

    return PhaseRegion.UNKNOWN
