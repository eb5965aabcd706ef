"""
Acceptance checks run by `seglat verify`.

Each check compares an implementation against an independent oracle: closed
forms against exact truncated sums and Monte Carlo, power iteration against
the characteristic cubic, union-find against breadth-first search, and the
coupled colourings against their inclusions. Monte Carlo checks of a law
or a region use the finite-size proxies: densities and wrap probabilities.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import structlog
from pydantic import BaseModel
from scipy import stats

from seglat.analytic import (
    BlockParams,
    PhaseRegion,
    block_event_A_prob,
    block_event_C_prob,
    block_r,
    classify_region,
    collinear_pair_prob_independent,
    collinear_pair_prob_one_choice,
    compass_spectral_radius,
    compass_spectral_radius_direct,
    compass_threshold,
    good_block_lower_bound,
    lambda_one_choice,
    perp_pair_prob_independent,
    perp_pair_prob_one_choice,
    vertex_blue_prob_independent,
    vertex_blue_prob_one_choice,
)
from seglat.cluster import breadth_first_components, clusters
from seglat.core.exceptions import ParameterError
from seglat.lattice import Boundary, RngStream, StreamRole, derive_seed, make_geometry, sample_sites
from seglat.models import (
    BlueEdgeSet,
    ModelTag,
    corrupted_compass_turquoise,
    feasible_segments,
    independent_blue,
    one_choice_blue,
    restrict_independent_to_occupied_pairs,
    sample_choices,
)
from seglat.montecarlo import (
    LocalEvent,
    LocalEventSpec,
    ModelSpec,
    ReplicateRunner,
    block_event_mc,
    embedding_check,
    estimate_local_event,
    sample_edges,
    truncated_sum_oracle,
    wrapping_probability,
)

logger = structlog.get_logger(__name__)

GROUPS = ("formulas", "compass", "coupling", "blocks", "regions", "clusters")
FAULTS = ("coupling",)

SIGMAS = 4.0
BLOCK_SIGMAS = 3.0
ORACLE_CUTOFF = 60
INCLUSION_GRID = tuple((d, p) for d in (2, 3) for p in (0.2, 0.5, 0.8))


class CheckResult(BaseModel):
    group: str
    name: str
    anchor: str
    passed: bool
    detail: str = ""


class VerifyReport(BaseModel):
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


@dataclass(frozen=True)
class VerifySettings:
    master_seed: int
    quick: bool = False
    inject_fault: Optional[str] = None
    runner: Optional[ReplicateRunner] = None

    @property
    def replicates(self) -> int:
        return 40 if self.quick else 1000

    @property
    def length(self) -> int:
        return 48 if self.quick else 256

    @property
    def coupled_runs(self) -> int:
        return 5 if self.quick else 50

    @property
    def inclusion_runs(self) -> int:
        return 20 if self.quick else 1000

    def inclusion_length(self, d: int) -> int:
        if d == 2:
            return 16 if self.quick else 32
        return 6 if self.quick else 10

    @property
    def wrap_length(self) -> int:
        return 32 if self.quick else 64

    @property
    def wrap_replicates(self) -> int:
        return 40 if self.quick else 400

    @property
    def region_length(self) -> int:
        return 64 if self.quick else 256

    @property
    def block_replicates(self) -> int:
        return 2000 if self.quick else 100_000

    def seed(self, *parts: int) -> int:
        return derive_seed(self.master_seed, *parts)


def _check(group: str, name: str, anchor: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(group=group, name=name, anchor=anchor, passed=bool(passed), detail=detail)


EDGE = LocalEventSpec(kind=LocalEvent.EDGE_BLUE)
VERTEX = LocalEventSpec(kind=LocalEvent.VERTEX_BLUE)
COLLINEAR = LocalEventSpec(kind=LocalEvent.PAIR_COLLINEAR)
PERP = LocalEventSpec(kind=LocalEvent.PAIR_PERP)


def _one_choice_targets(d: int, p: Fraction) -> Dict[LocalEventSpec, Fraction]:
    return {
        EDGE: lambda_one_choice(d),
        VERTEX: vertex_blue_prob_one_choice(d, p),
        COLLINEAR: collinear_pair_prob_one_choice(d, p),
        PERP: perp_pair_prob_one_choice(d, p),
    }


def _independent_targets(d: int, p: Fraction, lam: Fraction) -> Dict[LocalEventSpec, Fraction]:
    return {
        EDGE: lam,
        VERTEX: vertex_blue_prob_independent(d, p, lam),
        COLLINEAR: collinear_pair_prob_independent(p, lam),
        PERP: perp_pair_prob_independent(lam),
    }


def check_formulas(settings: VerifySettings) -> List[CheckResult]:
    results = []
    half = Fraction(1, 2)
    lam = Fraction(2, 5)

    # exact sums over gaps and marks
    cases = [(d, None, _one_choice_targets(d, half)) for d in (2, 3)]
    cases.append((2, lam, _independent_targets(2, half, lam)))
    for d, case_lam, targets in cases:
        model = "one-choice" if case_lam is None else "independent"
        for event, target in targets.items():
            oracle = truncated_sum_oracle(event, d, half, case_lam, K=ORACLE_CUTOFF)
            gap = target - oracle.value
            results.append(
                _check(
                    "formulas",
                    f"oracle {model} d={d} {event}",
                    "closed form vs truncated sum",
                    -1e-15 <= gap <= oracle.tail_bound + 1e-15,
                    f"closed={float(target):.12g} oracle={float(oracle.value):.12g} tail={float(oracle.tail_bound):.3g}",
                )
            )
    for k in (1, 3):
        distance = LocalEventSpec(kind=LocalEvent.PAIR_COLLINEAR_DISTANCE, k=k)
        oracle = truncated_sum_oracle(distance, 2, half, lam, K=ORACLE_CUTOFF)
        corr = (oracle.value - lam**2) / (lam * (1 - lam))
        results.append(
            _check(
                "formulas",
                f"oracle distance correlation k={k}",
                "correlation (1-p)^k",
                corr == (1 - half) ** k,
                f"corr={corr}",
            )
        )

    # Monte Carlo on the torus
    L, replicates = settings.length, settings.replicates
    mc_cases = [
        (ModelSpec(model=ModelTag.ONE_CHOICE, d=2, p=0.5), _one_choice_targets(2, half)),
        (
            ModelSpec(model=ModelTag.INDEPENDENT, d=2, p=0.8, lam=0.3),
            _independent_targets(2, Fraction(4, 5), Fraction(3, 10)),
        ),
    ]
    for index, (spec, targets) in enumerate(mc_cases):
        for event, target in targets.items():
            estimate = estimate_local_event(
                spec, event, L, replicates, settings.seed(1, index), settings.runner
            )
            results.append(
                _check(
                    "formulas",
                    f"mc {spec.model.value} p={spec.p} {event}",
                    "closed form vs Monte Carlo",
                    estimate.within(float(target), SIGMAS),
                    f"mean={estimate.mean:.6f} target={float(target):.6f} stderr={estimate.stderr:.2g}",
                )
            )

    distance = LocalEventSpec(kind=LocalEvent.PAIR_COLLINEAR_DISTANCE, k=2)
    spec = ModelSpec(model=ModelTag.INDEPENDENT, d=2, p=0.8, lam=0.3)
    estimate = estimate_local_event(spec, distance, L, replicates, settings.seed(2), settings.runner)
    target = 0.2**2
    corr, corr_err = estimate.correlation, estimate.correlation_stderr
    results.append(
        _check(
            "formulas",
            "mc distance correlation k=2",
            "correlation (1-p)^k",
            corr is not None and corr_err is not None and abs(corr - target) <= SIGMAS * corr_err + 1e-12,
            f"corr={corr} target={target}",
        )
    )

    # uniform endpoint choices
    geometry = make_geometry(2, [L, L], Boundary.TORUS)
    config = sample_sites(geometry, 0.5, settings.seed(3, StreamRole.SITES))
    counts = sample_choices(config, settings.seed(3, StreamRole.CHOICES)).counts()
    pvalue = float(stats.chisquare(counts).pvalue)
    results.append(
        _check("formulas", "choice uniformity", "uniform over the 2d directions", pvalue > 1e-4, f"p-value={pvalue:.3g}")
    )

    report = embedding_check(0.6, 0.5, 16 if settings.quick else 32, replicates, settings.seed(4), settings.runner)
    results.append(
        _check(
            "formulas",
            "independent plane slice",
            "slice of the independent model is the planar model",
            report.independent_vertex.within(report.independent_target, SIGMAS),
            f"mean={report.independent_vertex.mean:.6f} target={report.independent_target:.6f}",
        )
    )
    results.append(
        _check(
            "formulas",
            "one-choice plane slice",
            "slice keeps the three-dimensional edge density",
            report.one_choice_edge.within(report.one_choice_target, SIGMAS)
            and not report.one_choice_edge.within(report.lower_dimensional_target, SIGMAS),
            f"mean={report.one_choice_edge.mean:.6f} target={report.one_choice_target:.6f}",
        )
    )
    return results


def _corrupt(edges: BlueEdgeSet, reference: BlueEdgeSet) -> BlueEdgeSet:
    """Drop one edge of `edges` that `reference` needs, breaking the inclusion."""
    blue = edges.blue.copy()
    needed = np.argwhere(reference.blue & blue)
    if needed.size:
        blue[tuple(needed[0])] = False
    return BlueEdgeSet(
        geometry=edges.geometry, blue=blue, model_tag=edges.model_tag, params=edges.params, seeds=edges.seeds
    )


def check_compass(settings: VerifySettings) -> List[CheckResult]:
    results = []
    worst = 0.0
    for d in (2, 3, 4):
        for p in np.linspace(0.0, 0.95, 20):
            worst = max(worst, abs(compass_spectral_radius(d, p) - compass_spectral_radius_direct(d, p)))
    results.append(
        _check("compass", "spectral radius", "the three eigenvalues", worst < 1e-8, f"max deviation={worst:.2g}")
    )
    for d in (2, 3):
        corner = compass_spectral_radius(d, 1.0)
        results.append(
            _check(
                "compass",
                f"spectral radius at p=1 d={d}",
                "triangular at p = 1",
                abs(corner - (2 * d - 1) / (2 * d)) < 1e-12,
                f"radius={corner:.12g}",
            )
        )
        p_star = compass_threshold(d)
        radius = compass_spectral_radius_direct(d, p_star)
        results.append(
            _check(
                "compass",
                f"threshold d={d}",
                "no infinite turquoise cluster above p_1(d)",
                0.0 < p_star < 1.0 and abs(radius - 1.0) < 1e-6,
                f"p*={p_star:.9f} radius={radius:.9f}",
            )
        )

    for index, (d, p) in enumerate(INCLUSION_GRID):
        length = settings.inclusion_length(d)
        geometry = make_geometry(d, [length] * d, Boundary.TORUS)
        violations = 0
        for replicate in range(settings.inclusion_runs):
            stream = RngStream(master_seed=settings.seed(5, index), stream_id=replicate)
            config = sample_sites(geometry, p, stream.seed_for(StreamRole.SITES))
            choices, blue = one_choice_blue(config, feasible_segments(config), stream.seed_for(StreamRole.CHOICES))
            turquoise = corrupted_compass_turquoise(config, choices)
            if settings.inject_fault == "coupling":
                turquoise = _corrupt(turquoise, blue)
            violations += not blue.issubset(turquoise)
        results.append(
            _check(
                "compass",
                f"blue inside turquoise d={d} p={p}",
                "B inside T",
                violations == 0,
                f"violations={violations}/{settings.inclusion_runs}",
            )
        )
    return results


def check_coupling(settings: VerifySettings) -> List[CheckResult]:
    results = []
    for index, (d, p) in enumerate(INCLUSION_GRID):
        length = settings.inclusion_length(d)
        geometry = make_geometry(d, [length] * d, Boundary.TORUS)
        violations = 0
        for replicate in range(settings.inclusion_runs):
            stream = RngStream(master_seed=settings.seed(6, index), stream_id=replicate)
            config = sample_sites(geometry, p, stream.seed_for(StreamRole.SITES))
            blue = independent_blue(config, feasible_segments(config), 0.5, stream.seed_for(StreamRole.COLORS))
            derived = restrict_independent_to_occupied_pairs(config, blue)
            if settings.inject_fault == "coupling":
                blue = _corrupt(blue, derived)
            violations += not derived.issubset(blue)
        results.append(
            _check(
                "coupling",
                f"occupied pairs inside blue d={d} p={p}",
                "G inside B",
                violations == 0,
                f"violations={violations}/{settings.inclusion_runs}",
            )
        )

    p, lam = 0.7, 0.6
    targets = {EDGE: lam * p**2, COLLINEAR: lam**2 * p**3}
    for model in (ModelTag.MIXED, ModelTag.MIXED_DERIVED):
        spec = ModelSpec(model=model, d=2, p=p, lam=lam)
        for event, target in targets.items():
            estimate = estimate_local_event(
                spec, event, settings.length, settings.replicates, settings.seed(7), settings.runner
            )
            results.append(
                _check(
                    "coupling",
                    f"{model.value} {event}",
                    "mixed model law equals G",
                    estimate.within(target, SIGMAS),
                    f"mean={estimate.mean:.6f} target={target:.6f}",
                )
            )

    # both constructions must wrap equally often
    p, lam = 0.8, 0.7
    mixed, derived = (
        wrapping_probability(
            ModelSpec(model=model, d=2, p=p, lam=lam),
            settings.wrap_length,
            settings.wrap_replicates,
            settings.seed(10, index),
            settings.runner,
        )
        for index, model in enumerate((ModelTag.MIXED, ModelTag.MIXED_DERIVED))
    )
    spread = SIGMAS * float(np.hypot(mixed.stderr, derived.stderr)) + 1e-3
    results.append(
        _check(
            "coupling",
            f"wrap law p={p} lambda={lam}",
            "mixed model law equals G",
            abs(mixed.mean - derived.mean) <= spread,
            f"mixed={mixed.mean:.4f} derived={derived.mean:.4f} spread={spread:.4f}",
        )
    )
    return results


def check_blocks(settings: VerifySettings) -> List[CheckResult]:
    results = [_check("blocks", "block scale", "q^r = 1/2", block_r(0.5) == 1, f"r={block_r(0.5)}")]
    cases = [BlockParams(r=1, p=0.5, lam=7 / 16), BlockParams.from_q(r=3, q=2 ** (-1 / 3), lam=0.5)]
    replicates = settings.block_replicates
    for index, bp in enumerate(cases):
        mc = block_event_mc(bp, replicates, settings.seed(8, index), settings.runner)
        target = block_event_A_prob(bp)
        results.append(
            _check(
                "blocks",
                f"A_e1 r={bp.r}",
                "probability of A_e1",
                mc.a_e1.within(target, BLOCK_SIGMAS, floor=1e-3),
                f"mc={mc.a_e1.mean:.5f} formula={target:.5f}",
            )
        )
        if mc.c_e1 is not None and mc.good is not None:
            target = block_event_C_prob(bp)
            results.append(
                _check(
                    "blocks",
                    f"C_e1 r={bp.r}",
                    "probability of C_e1",
                    mc.c_e1.within(target, BLOCK_SIGMAS, floor=1e-3),
                    f"mc={mc.c_e1.mean:.5f} formula={target:.5f}",
                )
            )
            bound = good_block_lower_bound(bp)
            results.append(
                _check(
                    "blocks",
                    f"good block r={bp.r}",
                    "good block union bound",
                    mc.good.mean + BLOCK_SIGMAS * mc.good.stderr + 1e-3 >= bound,
                    f"mc={mc.good.mean:.5f} bound={bound:.5f}",
                )
            )
    return results


def check_regions(settings: VerifySettings) -> List[CheckResult]:
    d, p, lam = 2, 0.9, 0.25
    region = classify_region(d, p, lam)
    estimate = wrapping_probability(
        ModelSpec(model=ModelTag.INDEPENDENT, d=d, p=p, lam=lam),
        settings.region_length,
        settings.wrap_replicates,
        settings.seed(11),
        settings.runner,
    )
    return [
        _check(
            "regions",
            f"label p={p} lambda={lam}",
            "region A",
            region is PhaseRegion.NO_PERCOLATION_A,
            f"region={region.value}",
        ),
        _check(
            "regions",
            f"no wrap p={p} lambda={lam}",
            "region A does not percolate",
            estimate.mean <= 0.05,
            f"wrap={estimate.mean:.4f} L={settings.region_length} replicates={settings.wrap_replicates}",
        ),
    ]


def check_clusters(settings: VerifySettings) -> List[CheckResult]:
    specs = [
        ModelSpec(model=ModelTag.ONE_CHOICE, d=2, p=0.5),
        ModelSpec(model=ModelTag.INDEPENDENT, d=2, p=0.8, lam=0.6),
        ModelSpec(model=ModelTag.MIXED, d=2, p=0.9, lam=0.9),
        ModelSpec(model=ModelTag.TURQUOISE, d=2, p=0.5),
        ModelSpec(model=ModelTag.INDEPENDENT, d=3, p=0.5, lam=0.5),
        ModelSpec(model=ModelTag.ONE_CHOICE, d=2, p=0.5, boundary=Boundary.FREE),
    ]
    mismatches = 0
    order_changes = 0
    runs = 0
    for index, spec in enumerate(specs):
        length = 8 if spec.d == 3 else 24
        geometry = make_geometry(spec.d, [length] * spec.d, spec.boundary)
        for replicate in range(settings.coupled_runs):
            stream = RngStream(master_seed=settings.seed(9, index), stream_id=replicate)
            edges = sample_edges(spec, geometry, stream)
            report = clusters(geometry, edges)
            found = sorted(
                (int(size), tuple(bool(w) for w in flags)) for size, flags in zip(report.sizes, report.wrap_flags)
            )
            mismatches += found != breadth_first_components(geometry, edges)

            order = stream.generator(StreamRole.BLOCKS).permutation(edges.edge_count)
            shuffled = clusters(geometry, edges, edge_order=order)
            order_changes += not (
                np.array_equal(shuffled.component_of, report.component_of)
                and np.array_equal(shuffled.wrap_flags, report.wrap_flags)
            )
            runs += 1
    return [
        _check("clusters", "union-find vs breadth-first", "sizes and wrap flags agree", mismatches == 0, f"mismatches={mismatches}/{runs}"),
        _check("clusters", "edge order", "labels independent of edge order", order_changes == 0, f"changes={order_changes}/{runs}"),
    ]


CHECKS: Dict[str, Callable[[VerifySettings], List[CheckResult]]] = {
    "formulas": check_formulas,
    "compass": check_compass,
    "coupling": check_coupling,
    "blocks": check_blocks,
    "regions": check_regions,
    "clusters": check_clusters,
}


def run_verify(settings: VerifySettings, only: Optional[Sequence[str]] = None) -> VerifyReport:
    """Run the selected groups in a fixed order."""
    selected = list(only) if only else list(GROUPS)
    unknown = [group for group in selected if group not in CHECKS]
    if unknown:
        raise ParameterError(f"Unknown check groups: {', '.join(unknown)}", field="only", value=unknown)
    if settings.inject_fault is not None and settings.inject_fault not in FAULTS:
        raise ParameterError("Unknown fault", field="inject_fault", value=settings.inject_fault)

    checks: List[CheckResult] = []
    for group in GROUPS:
        if group in selected:
            group_checks = CHECKS[group](settings)
            logger.info(
                "Check group done",
                group=group,
                passed=sum(c.passed for c in group_checks),
                total=len(group_checks),
            )
            checks.extend(group_checks)
    return VerifyReport(checks=checks)
