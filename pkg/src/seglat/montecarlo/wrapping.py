"""
Wrapping probability on the torus and the searches built on it.

A replicate percolates when some blue component winds around the torus.
Searches reuse the same replicate streams at every parameter value, so wrap
probabilities at neighbouring points are positively correlated and the
bisection sees a smooth curve.
"""

from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from seglat.cluster.report import clusters, wraps_any
from seglat.core.config import ThresholdConfig, get_config
from seglat.core.exceptions import EstimationError, ParameterError
from seglat.lattice.geometry import Boundary, Geometry
from seglat.lattice.rng import RngStream, derive_seed
from seglat.lattice.sites import SiteConfig, sample_sites
from seglat.models.coloring import ModelTag
from seglat.montecarlo.models import (
    CriticalEstimate,
    CurvePoint,
    EstimateWithCI,
    ModelSpec,
    SweepResult,
    SweepRow,
)
from seglat.montecarlo.runner import ReplicateRunner, default_runner
from seglat.montecarlo.sampling import geometry_for, sample_edges

logger = structlog.get_logger(__name__)

COARSE_POINTS = 5
MONOTONE_SIGMAS = 3.0


def _wrap_replicate(
    spec: ModelSpec,
    geometry: Geometry,
    master_seed: int,
    config: Optional[SiteConfig],
    index: int,
) -> Tuple[float, float]:
    edges = sample_edges(spec, geometry, RngStream(master_seed=master_seed, stream_id=index), config)
    report = clusters(geometry, edges)
    return float(wraps_any(report)), report.largest_fraction


def _check_replicates(replicates: int) -> None:
    if replicates < 2:
        raise ParameterError("At least two replicates are needed", field="replicates", value=replicates)


def _run(
    spec: ModelSpec,
    L: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner],
    config: Optional[SiteConfig] = None,
    keep_values: bool = False,
) -> Tuple[EstimateWithCI, EstimateWithCI]:
    _check_replicates(replicates)
    if spec.boundary != Boundary.TORUS:
        raise ParameterError("Wrapping is defined on the torus", field="boundary", value=spec.boundary.value)
    geometry = geometry_for(spec, L)
    worker = partial(_wrap_replicate, spec, geometry, master_seed, config)
    results = default_runner(runner).map(worker, replicates)
    wraps = EstimateWithCI.from_values([w for w, _ in results], master_seed, keep_values)
    largest = EstimateWithCI.from_values([f for _, f in results], master_seed, keep_values)
    return wraps, largest


def _wrap_estimate(
    spec: ModelSpec,
    parameter: str,
    L: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner],
    value: float,
) -> EstimateWithCI:
    wraps, _ = _run(spec.with_value(parameter, value), L, replicates, master_seed, runner)
    return wraps


def wrapping_probability(
    spec: ModelSpec,
    L: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner] = None,
    keep_values: bool = False,
) -> EstimateWithCI:
    """Fraction of replicates with a wrapping blue cluster."""
    wraps, _ = _run(spec, L, replicates, master_seed, runner, keep_values=keep_values)
    logger.info("Wrapping probability", model=spec.model.value, p=spec.p, lam=spec.lam, L=L, mean=wraps.mean)
    return wraps


def quenched_wrapping_probability(
    spec: ModelSpec,
    L: int,
    site_seed: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner] = None,
) -> EstimateWithCI:
    """Wrapping probability given one fixed site configuration; only colours are resampled."""
    geometry = geometry_for(spec, L)
    config = sample_sites(geometry, spec.p, site_seed)
    wraps, _ = _run(spec, L, replicates, master_seed, runner, config=config)
    logger.info("Quenched wrapping probability", site_seed=site_seed, occupied=config.occupied_count, mean=wraps.mean)
    return wraps


def _bisect(
    evaluate: Callable[[float], EstimateWithCI],
    low: float,
    high: float,
    increasing: bool,
    target: float,
    tol: float,
) -> Tuple[float, float]:
    """Bisection on a monotone noisy curve; returns (estimate, halfwidth)."""
    w_low = w_high = None
    while high - low > tol:
        mid = 0.5 * (low + high)
        value = evaluate(mid)
        above = value.mean > target
        if above == increasing:
            high, w_high = mid, value
        else:
            low, w_low = mid, value
    estimate = 0.5 * (low + high)
    halfwidth = 0.5 * (high - low)
    if w_low is not None and w_high is not None and w_high.mean != w_low.mean:
        # statistical part: stderr of the curve divided by its slope
        slope = abs(w_high.mean - w_low.mean) / (high - low)
        noise = max(w_low.stderr, w_high.stderr)
        halfwidth += min(noise / slope, high - low)
    return estimate, halfwidth


def _scan_direction(
    parameter: str, grid: np.ndarray, values: List[EstimateWithCI], target: float
) -> bool:
    """True if the scan increases; raises when it is not monotone or misses the target."""
    increasing = values[-1].mean >= values[0].mean
    sign = 1.0 if increasing else -1.0
    for (x0, a), (x1, b) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        drop = sign * (a.mean - b.mean)
        noise = MONOTONE_SIGMAS * float(np.hypot(a.stderr, b.stderr))
        if drop > noise:
            raise EstimationError(
                "Wrapping probability is not monotone across the bracket",
                parameter=parameter,
                bracket=(float(x0), float(x1)),
            )
    lo_side = values[0].mean - target
    hi_side = values[-1].mean - target
    if lo_side * hi_side > 0:
        raise EstimationError(
            "Wrapping probability does not cross the target in the bracket",
            parameter=parameter,
            bracket=(float(grid[0]), float(grid[-1])),
        )
    return increasing


def critical_search(
    spec: ModelSpec,
    vary: str,
    bracket: Tuple[float, float],
    L_list: Sequence[int],
    replicates: int,
    master_seed: int,
    target: float = 0.5,
    tol: float = 0.005,
    runner: Optional[ReplicateRunner] = None,
) -> CriticalEstimate:
    """
    Crossing of wrap probability with `target` as `vary` moves through `bracket`.

    Per L: a coarse scan checks monotonicity, then bisection runs inside the
    coarse cell that crosses the target. The largest L gives the estimate and
    the spread over L_list its uncertainty.
    """
    if vary not in ("p", "lambda"):
        raise ParameterError("vary must be p or lambda", field="vary", value=vary)
    low, high = map(float, bracket)
    if not low < high:
        raise ParameterError("Bracket must be increasing", field="bracket", value=bracket)
    if not L_list:
        raise ParameterError("L_list is empty", field="L_list", value=L_list)
    runner = default_runner(runner)

    per_L = {}
    for L in sorted(L_list):
        evaluate = partial(_wrap_estimate, spec, vary, L, replicates, derive_seed(master_seed, L), runner)
        grid = np.linspace(low, high, COARSE_POINTS)
        scan = [evaluate(float(x)) for x in grid]
        increasing = _scan_direction(vary, grid, scan, target)
        means = np.array([v.mean for v in scan])
        crossed = means > target if increasing else means <= target
        cell = int(np.argmax(crossed)) if crossed.any() else len(grid) - 1
        cell_low, cell_high = float(grid[max(cell - 1, 0)]), float(grid[max(cell, 1)])
        estimate, _ = _bisect(evaluate, cell_low, cell_high, increasing, target, tol)
        per_L[int(L)] = estimate
        logger.info("Crossing found", parameter=vary, L=L, estimate=estimate)

    largest_L = max(per_L)
    spread = max(abs(v - per_L[largest_L]) for v in per_L.values())
    return CriticalEstimate(
        parameter=vary,
        estimate=per_L[largest_L],
        ci_halfwidth=max(spread, tol),
        L_list=sorted(int(L) for L in L_list),
        crossing_target=target,
        per_L=per_L,
        bracket=(low, high),
    )


def _check_grid(name: str, grid: Sequence[float]) -> List[float]:
    values = [float(x) for x in grid]
    if not values or any(a >= b for a, b in zip(values, values[1:])):
        raise ParameterError(f"{name} must be non-empty and strictly increasing", field=name, value=values)
    return values


def frontier_sweep(
    d: int,
    p_grid: Sequence[float],
    lam_grid: Sequence[float],
    L: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner] = None,
) -> SweepResult:
    """Independent-model wrap probability on the full (p, lambda) grid."""
    p_values = _check_grid("p_grid", p_grid)
    lam_values = _check_grid("lambda_grid", lam_grid)
    runner = default_runner(runner)
    rows = []
    for p in p_values:
        for lam in lam_values:
            spec = ModelSpec(model=ModelTag.INDEPENDENT, d=d, p=p, lam=lam)
            wraps, largest = _run(spec, L, replicates, master_seed, runner)
            rows.append(
                SweepRow(model=spec.model, d=d, L=L, p=p, lam=lam, wrap_prob=wraps, largest_fraction=largest)
            )
        logger.info("Sweep row done", p=p, points=len(lam_values))
    return SweepResult(rows=rows)


def mixed_curve_estimate(
    d: int,
    p_grid: Sequence[float],
    L: int,
    replicates: int,
    master_seed: int,
    tol: float = 0.005,
    thresholds: Optional[ThresholdConfig] = None,
    runner: Optional[ReplicateRunner] = None,
) -> SweepResult:
    """
    Empirical lambda-bar_c(p) of the mixed model by bisection on wrap = 1/2.

    At or below the site threshold no lambda percolates and the curve is
    pinned at 1 without a search. A finite torus whose wrap probability stays
    below 1/2 even at lambda = 1 is reported the same way.
    """
    p_values = _check_grid("p_grid", p_grid)
    thresholds = thresholds or get_config().thresholds
    site_threshold = thresholds.site_threshold(d)
    runner = default_runner(runner)

    rows, curve = [], []
    for p in p_values:
        spec = ModelSpec(model=ModelTag.MIXED, d=d, p=p, lam=1.0)
        if p <= site_threshold:
            curve.append(CurvePoint(p=p, lambda_c=1.0, ci_halfwidth=0.0, pinned=True))
            logger.info("Mixed curve pinned at 1", p=p, site_threshold=site_threshold)
            continue

        evaluate = partial(_wrap_estimate, spec, "lambda", L, replicates, master_seed, runner)
        if evaluate(1.0).mean <= 0.5:
            curve.append(CurvePoint(p=p, lambda_c=1.0, ci_halfwidth=0.0, pinned=True))
            logger.warning("No crossing below lambda = 1 at this L", p=p, L=L)
            continue

        estimate, halfwidth = _bisect(evaluate, 0.0, 1.0, True, 0.5, tol)
        wraps, largest = _run(spec.with_value("lambda", estimate), L, replicates, master_seed, runner)
        rows.append(
            SweepRow(model=ModelTag.MIXED, d=d, L=L, p=p, lam=estimate, wrap_prob=wraps, largest_fraction=largest)
        )
        curve.append(CurvePoint(p=p, lambda_c=estimate, ci_halfwidth=halfwidth))
        logger.info("Mixed curve point", p=p, lambda_c=estimate, halfwidth=halfwidth)
    return SweepResult(rows=rows, curve=curve)


def mixed_curve_interpolator(result: SweepResult) -> Callable[[float], Optional[float]]:
    """Piecewise-linear lambda-bar_c(p) for classify_region; None outside the sampled range."""
    points = sorted(result.curve, key=lambda point: point.p)
    ps = np.array([point.p for point in points])
    values = np.array([point.lambda_c for point in points])

    def curve(p: float) -> Optional[float]:
        if not ps.size or p < ps[0] or p > ps[-1]:
            return None
        return float(np.interp(p, ps, values))

    return curve
