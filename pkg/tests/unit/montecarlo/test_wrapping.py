"""
Unit tests for wrapping estimates, sweeps and curve helpers.
"""

import pytest

from seglat.core.exceptions import EstimationError, ParameterError
from seglat.lattice import Boundary
from seglat.models import ModelTag
from seglat.montecarlo import (
    CurvePoint,
    EstimateWithCI,
    ModelSpec,
    SweepResult,
    critical_search,
    frontier_sweep,
    mixed_curve_estimate,
    mixed_curve_interpolator,
    quenched_wrapping_probability,
    wrapping_probability,
)
from seglat.montecarlo.wrapping import _scan_direction

pytestmark = pytest.mark.unit


class TestWrappingProbability:
    def test_everything_blue_wraps(self):
        """Test everything blue wraps."""
        spec = ModelSpec(model=ModelTag.INDEPENDENT, p=1.0, lam=1.0)
        estimate = wrapping_probability(spec, L=8, replicates=3, master_seed=1)
        assert estimate.mean == 1.0
        assert estimate.stderr == 0.0

    def test_nothing_blue_never_wraps(self):
        """Test nothing blue never wraps."""
        spec = ModelSpec(model=ModelTag.MIXED, p=0.9, lam=0.0)
        assert wrapping_probability(spec, L=8, replicates=3, master_seed=1).mean == 0.0

    def test_keep_values(self):
        """Test that per-replicate wrap indicators are kept on request."""
        spec = ModelSpec(model=ModelTag.ONE_CHOICE, p=0.6)
        estimate = wrapping_probability(spec, L=8, replicates=4, master_seed=1, keep_values=True)
        assert len(estimate.per_replicate_values) == 4
        assert set(estimate.per_replicate_values) <= {0.0, 1.0}

    def test_free_box_rejected(self):
        """Test free box rejected."""
        spec = ModelSpec(model=ModelTag.ONE_CHOICE, p=0.6, boundary=Boundary.FREE)
        with pytest.raises(ParameterError):
            wrapping_probability(spec, L=8, replicates=3, master_seed=1)

    def test_quenched_full_lattice(self):
        """Test quenched full lattice."""
        spec = ModelSpec(model=ModelTag.INDEPENDENT, p=1.0, lam=1.0)
        estimate = quenched_wrapping_probability(spec, L=8, site_seed=4, replicates=3, master_seed=2)
        assert estimate.mean == 1.0


class TestCriticalSearchValidation:
    def _spec(self):
        return ModelSpec(model=ModelTag.ONE_CHOICE, p=0.5)

    def test_unknown_parameter(self):
        """Test that only p and lambda can be searched."""
        with pytest.raises(ParameterError):
            critical_search(self._spec(), "q", (0.4, 0.6), [8], 2, 1)

    def test_reversed_bracket(self):
        """Test that a reversed bracket is rejected."""
        with pytest.raises(ParameterError):
            critical_search(self._spec(), "p", (0.6, 0.4), [8], 2, 1)

    def test_empty_lengths(self):
        """Test that at least one L is required."""
        with pytest.raises(ParameterError):
            critical_search(self._spec(), "p", (0.4, 0.6), [], 2, 1)


class TestScanDirection:
    def _values(self, means, stderr=0.01):
        return [EstimateWithCI(mean=m, stderr=stderr, replicates=10, master_seed=0) for m in means]

    def test_increasing(self):
        """Test an increasing wrap curve."""
        assert _scan_direction("p", [0.1, 0.2, 0.3], self._values([0.1, 0.4, 0.9]), 0.5) is True

    def test_decreasing(self):
        """Test a decreasing wrap curve."""
        assert _scan_direction("p", [0.1, 0.2, 0.3], self._values([0.9, 0.4, 0.1]), 0.5) is False

    def test_no_crossing(self):
        """Test that a curve that never crosses the level is an error."""
        with pytest.raises(EstimationError):
            _scan_direction("p", [0.1, 0.2, 0.3], self._values([0.1, 0.2, 0.3]), 0.5)

    def test_not_monotone(self):
        """Test that a non-monotone curve reports its bracket."""
        with pytest.raises(EstimationError) as exc_info:
            _scan_direction("lambda", [0.1, 0.2, 0.3, 0.4], self._values([0.1, 0.8, 0.2, 0.9]), 0.5)
        assert exc_info.value.context["bracket"] == (0.2, 0.3)


class TestSweeps:
    def test_frontier_grid(self):
        """Test the frontier sweep at p=1."""
        result = frontier_sweep(2, [1.0], [0.0, 1.0], L=8, replicates=2, master_seed=1)
        assert [(row.p, row.lam) for row in result.rows] == [(1.0, 0.0), (1.0, 1.0)]
        assert [row.wrap_prob.mean for row in result.rows] == [0.0, 1.0]
        assert result.rows[1].largest_fraction.mean == 1.0

    def test_frontier_rejects_unsorted_grid(self):
        """Test frontier rejects unsorted grid."""
        with pytest.raises(ParameterError):
            frontier_sweep(2, [0.8, 0.7], [0.5], L=8, replicates=2, master_seed=1)

    def test_mixed_curve_pinned_below_site_threshold(self):
        """Test mixed curve pinned below site threshold."""
        result = mixed_curve_estimate(2, [0.3, 0.5], L=8, replicates=2, master_seed=1)
        assert result.rows == []
        assert [(point.p, point.lambda_c, point.pinned) for point in result.curve] == [
            (0.3, 1.0, True),
            (0.5, 1.0, True),
        ]


class TestCurveInterpolator:
    def test_linear_between_points(self):
        """Test linear between points."""
        result = SweepResult(
            curve=[
                CurvePoint(p=0.9, lambda_c=0.4, ci_halfwidth=0.01),
                CurvePoint(p=0.7, lambda_c=0.8, ci_halfwidth=0.01),
            ]
        )
        curve = mixed_curve_interpolator(result)
        assert curve(0.8) == pytest.approx(0.6)
        assert curve(0.95) is None
        assert curve(0.6) is None

    def test_empty_curve(self):
        """Test that an empty sweep has no curve."""
        assert mixed_curve_interpolator(SweepResult())(0.5) is None
