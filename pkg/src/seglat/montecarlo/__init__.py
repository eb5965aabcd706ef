"""
Replicated Monte Carlo estimators, exact oracles and result writers.

Usage:
    from seglat.models import ModelTag
    from seglat.montecarlo import ModelSpec, ReplicateRunner, wrapping_probability

    spec = ModelSpec(model=ModelTag.INDEPENDENT, d=2, p=0.8, lam=0.5)
    with ReplicateRunner(threads=4) as runner:
        estimate = wrapping_probability(spec, L=64, replicates=200, master_seed=1, runner=runner)
"""

from .blocks import block_event_mc, block_events
from .embedding import embedding_check
from .local import estimate_local_event, event_frequency
from .models import (
    BlockEventEstimates,
    CriticalEstimate,
    CurvePoint,
    EmbeddingReport,
    EstimateWithCI,
    LocalEvent,
    LocalEventSpec,
    ModelSpec,
    SweepResult,
    SweepRow,
)
from .oracle import OracleResult, truncated_sum_oracle
from .output import CSV_FIELDS, estimate_row, sweep_rows, write_csv, write_json
from .runner import ReplicateRunner
from .sampling import geometry_for, sample_edges
from .wrapping import (
    critical_search,
    frontier_sweep,
    mixed_curve_estimate,
    mixed_curve_interpolator,
    quenched_wrapping_probability,
    wrapping_probability,
)

__all__ = [
    "ModelSpec",
    "LocalEvent",
    "LocalEventSpec",
    "EstimateWithCI",
    "SweepRow",
    "SweepResult",
    "CurvePoint",
    "CriticalEstimate",
    "BlockEventEstimates",
    "EmbeddingReport",
    "ReplicateRunner",
    "geometry_for",
    "sample_edges",
    "estimate_local_event",
    "event_frequency",
    "truncated_sum_oracle",
    "OracleResult",
    "wrapping_probability",
    "quenched_wrapping_probability",
    "critical_search",
    "frontier_sweep",
    "mixed_curve_estimate",
    "mixed_curve_interpolator",
    "block_event_mc",
    "block_events",
    "embedding_check",
    "CSV_FIELDS",
    "estimate_row",
    "sweep_rows",
    "write_csv",
    "write_json",
]
