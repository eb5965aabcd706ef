"""
Closed-form local probabilities on Z^d.

Every function accepts Fractions and then returns an exact Fraction, which is
how the CLI prints 7/16 rather than 0.4375. Floats give floats.
"""

from fractions import Fraction
from numbers import Rational
from typing import Union

from seglat.core.exceptions import ParameterError
from seglat.lattice.sites import check_probability

Number = Union[float, Fraction]


def _check_dimension(d: int, minimum: int = 1) -> None:
    if not isinstance(d, int) or d < minimum:
        raise ParameterError(f"Dimension must be an integer >= {minimum}", field="d", value=d)


def _exact(value: Number) -> Number:
    """Ints and other rationals become Fractions; floats stay floats."""
    if isinstance(value, Rational):
        return Fraction(value)
    return value


def lambda_one_choice(d: int) -> Fraction:
    """Probability that a given edge is blue in the one-choice model: 1-(1-1/2d)^2."""
    _check_dimension(d)
    return 1 - (1 - Fraction(1, 2 * d)) ** 2


def vertex_blue_prob_one_choice(d: int, p: Number) -> Number:
    """P(o is incident to a blue edge) = p + (1-p)(1-(1-lambda)^d)."""
    _check_dimension(d, 2)
    check_probability(p, "p", allow_zero=True)
    p = _exact(p)
    lam = lambda_one_choice(d)
    return p + (1 - p) * (1 - (1 - lam) ** d)


def collinear_pair_prob_one_choice(d: int, p: Number) -> Number:
    """P(both edges at o along one axis are blue) = 1 - (1 + p/d)(1 - lambda)."""
    _check_dimension(d, 2)
    check_probability(p, "p", allow_zero=True)
    p = _exact(p)
    lam = lambda_one_choice(d)
    return 1 - (1 + p / d) * (1 - lam)


def perp_pair_prob_one_choice(d: int, p: Number) -> Number:
    """P(edges o->e_1 and o->e_2 both blue) = lambda^2 - p(2d-1)^2/(2d)^4."""
    _check_dimension(d, 2)
    check_probability(p, "p", allow_zero=True)
    p = _exact(p)
    lam = lambda_one_choice(d)
    return lam**2 - p * Fraction((2 * d - 1) ** 2, (2 * d) ** 4)


def vertex_blue_prob_independent(d: int, p: Number, lam: Number) -> Number:
    """P(o is incident to a blue edge) = 1-(1-lam)^d + p((1-lam)^d - (1-lam)^(2d))."""
    _check_dimension(d, 2)
    check_probability(p, "p", allow_zero=True)
    check_probability(lam, "lambda", allow_zero=True)
    p, lam = _exact(p), _exact(lam)
    miss = (1 - lam) ** d
    return 1 - miss + p * (miss - miss**2)


def collinear_pair_prob_independent(p: Number, lam: Number) -> Number:
    """Two collinear edges at o: one shared coin if o is unoccupied, two otherwise."""
    check_probability(p, "p", allow_zero=True)
    check_probability(lam, "lambda", allow_zero=True)
    p, lam = _exact(p), _exact(lam)
    return p * lam**2 + (1 - p) * lam


def perp_pair_prob_independent(lam: Number) -> Number:
    """Perpendicular edges always lie in distinct segments."""
    check_probability(lam, "lambda", allow_zero=True)
    return _exact(lam) ** 2


def collinear_corr_independent(p: Number, k: int) -> Number:
    """
    Correlation of the colours of two collinear edges with k sites between them.

    The edges share a segment iff those k sites are all unoccupied, so the
    correlation is (1-p)^k.
    """
    check_probability(p, "p", allow_zero=True)
    if not isinstance(k, int) or k < 1:
        raise ParameterError("Separation must be a positive integer", field="k", value=k)
    return (1 - _exact(p)) ** k


def format_exact(value: Number) -> str:
    """Exact rational when possible, else 17 significant digits."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return f"{float(value):.17g}"
