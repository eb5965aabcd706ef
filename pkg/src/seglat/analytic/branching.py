"""Branching-process domination of the independent model's cluster at the origin."""

from typing import NamedTuple

from seglat.analytic.local import Number, _check_dimension, _exact
from seglat.core.exceptions import ParameterError
from seglat.lattice.sites import check_probability


class BranchingMeans(NamedTuple):
    mu1: Number
    mu2: Number
    subcritical: bool


def subcritical_bound(d: int, p: Number) -> Number:
    """p / (2d - 1): below this lambda both family-size means are < 1."""
    return _exact(p) / (2 * d - 1)


def branching_means(d: int, p: Number, lam: Number) -> BranchingMeans:
    """
    Mean family sizes mu1 = (2d-1) lam / p and mu2 = 2(d-1) lam / p.

    Since mu2 < mu1 for every d, max(mu1, mu2) < 1 reduces to lam < p/(2d-1).
    """
    _check_dimension(d, 2)
    check_probability(p, "p", allow_zero=False)
    check_probability(lam, "lambda", allow_zero=True)
    p, lam = _exact(p), _exact(lam)
    if p == 0:
        raise ParameterError("p must be positive", field="p", value=p)
    mu1 = (2 * d - 1) * lam / p
    mu2 = 2 * (d - 1) * lam / p
    return BranchingMeans(mu1=mu1, mu2=mu2, subcritical=bool(lam < subcritical_bound(d, p)))
