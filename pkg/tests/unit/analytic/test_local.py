"""
Unit tests for the closed-form local probabilities.
"""

from fractions import Fraction

import pytest

from seglat.analytic import (
    collinear_corr_independent,
    collinear_pair_prob_independent,
    collinear_pair_prob_one_choice,
    format_exact,
    lambda_one_choice,
    perp_pair_prob_independent,
    perp_pair_prob_one_choice,
    vertex_blue_prob_independent,
    vertex_blue_prob_one_choice,
)
from seglat.core.exceptions import ParameterError

pytestmark = pytest.mark.unit

HALF = Fraction(1, 2)


class TestOneChoice:
    def test_edge_probability(self):
        """Test the one-choice edge probability in d=2 and d=3."""
        assert lambda_one_choice(2) == Fraction(7, 16)
        assert lambda_one_choice(3) == Fraction(11, 36)

    def test_vertex(self):
        """Test the one-choice vertex probability at p=1/2."""
        assert vertex_blue_prob_one_choice(2, HALF) == Fraction(431, 512)

    def test_collinear(self):
        """Test the one-choice collinear pair probability at p=1/2."""
        assert collinear_pair_prob_one_choice(2, HALF) == Fraction(19, 64)

    def test_perpendicular(self):
        """Test the perpendicular pair probability against its exact value."""
        assert perp_pair_prob_one_choice(2, HALF) == Fraction(89, 512)

    def test_empty_lattice_limits(self):
        """Test empty lattice limits."""
        assert collinear_pair_prob_one_choice(2, 0) == lambda_one_choice(2)
        assert perp_pair_prob_one_choice(3, 0) == lambda_one_choice(3) ** 2

    def test_float_input_gives_float(self):
        """Test float input gives float."""
        value = vertex_blue_prob_one_choice(2, 0.5)
        assert isinstance(value, float)
        assert value == pytest.approx(431 / 512)

    def test_rejects_low_dimension(self):
        """Test rejects low dimension."""
        with pytest.raises(ParameterError):
            vertex_blue_prob_one_choice(1, HALF)


class TestIndependent:
    def test_vertex_limits(self):
        """Test the independent vertex probability at p=0 and p=1."""
        lam = Fraction(2, 5)
        assert vertex_blue_prob_independent(2, 0, lam) == 1 - (1 - lam) ** 2
        assert vertex_blue_prob_independent(2, 1, lam) == 1 - (1 - lam) ** 4

    def test_collinear_limits(self):
        """Test the independent collinear probability at p=0 and p=1."""
        lam = Fraction(3, 10)
        assert collinear_pair_prob_independent(1, lam) == lam**2
        assert collinear_pair_prob_independent(0, lam) == lam

    def test_perpendicular(self):
        """Test the perpendicular pair probability against its exact value."""
        assert perp_pair_prob_independent(Fraction(2, 5)) == Fraction(4, 25)

    def test_collinear_correlation(self):
        """Test the distance-k correlation of the independent model."""
        assert collinear_corr_independent(HALF, 3) == Fraction(1, 8)
        assert collinear_corr_independent(1, 1) == 0

    def test_correlation_rejects_zero_separation(self):
        """Test correlation rejects zero separation."""
        with pytest.raises(ParameterError):
            collinear_corr_independent(HALF, 0)

    def test_rejects_bad_lambda(self):
        """Test rejects bad lambda."""
        with pytest.raises(ParameterError):
            perp_pair_prob_independent(1.5)


class TestFormatExact:
    def test_fraction(self):
        """Test that fractions print as num/den."""
        assert format_exact(Fraction(7, 16)) == "7/16"

    def test_integer(self):
        """Test that whole fractions print without a denominator."""
        assert format_exact(Fraction(3)) == "3"

    def test_float(self):
        """Test that floats print with full precision."""
        assert format_exact(0.1) == "0.10000000000000001"
