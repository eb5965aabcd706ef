"""
Local-event estimation on the torus.

Each replicate averages the event indicator over every translation of the
torus; the replicate means are then treated as independent observations, so
the standard error reflects replicate-to-replicate spread only.
"""

from functools import partial
from typing import Optional

import numpy as np
import structlog

from seglat.core.config import get_config
from seglat.core.exceptions import ModelError, ParameterError
from seglat.lattice.geometry import Boundary, Geometry
from seglat.lattice.rng import RngStream
from seglat.lattice.sites import check_bias_bound
from seglat.models.coloring import BlueEdgeSet, ModelTag
from seglat.montecarlo.models import EstimateWithCI, LocalEvent, LocalEventSpec, ModelSpec
from seglat.montecarlo.runner import ReplicateRunner, default_runner
from seglat.montecarlo.sampling import geometry_for, sample_edges

logger = structlog.get_logger(__name__)


def event_frequency(edges: BlueEdgeSet, event: LocalEventSpec) -> float:
    """Fraction of translations at which `event` holds."""
    blue = edges.blue
    if event.kind == LocalEvent.EDGE_BLUE:
        return float(blue.mean())
    if event.kind == LocalEvent.VERTEX_BLUE:
        return float(edges.blue_sites().mean())
    if event.kind == LocalEvent.PAIR_COLLINEAR:
        # edges (o - e0, o) and (o, o + e0)
        return float((blue[0] & np.roll(blue[0], 1, axis=0)).mean())
    if event.kind == LocalEvent.PAIR_PERP:
        return float((blue[0] & blue[1]).mean())
    if event.kind == LocalEvent.PAIR_COLLINEAR_DISTANCE:
        return float((blue[0] & np.roll(blue[0], -event.k, axis=0)).mean())
    raise ModelError("Unknown local event", event=str(event))


def _local_replicate(
    spec: ModelSpec, geometry: Geometry, event: LocalEventSpec, master_seed: int, index: int
) -> tuple[float, float]:
    edges = sample_edges(spec, geometry, RngStream(master_seed=master_seed, stream_id=index))
    return event_frequency(edges, event), float(edges.blue[0].mean())


def _check_event(spec: ModelSpec, event: LocalEventSpec, L: int) -> None:
    if spec.model == ModelTag.TURQUOISE:
        raise ModelError("Local events are defined for colouring models", model=spec.model.value, event=str(event))
    if spec.boundary != Boundary.TORUS:
        raise ModelError("Local events are estimated on the torus", event=str(event))
    if event.k is not None and event.k >= L // 2:
        raise ParameterError("Pair offset must be below L/2", field="k", value=event.k)


def estimate_local_event(
    spec: ModelSpec,
    event: LocalEventSpec,
    L: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner] = None,
    keep_values: bool = False,
    strict: bool = True,
) -> EstimateWithCI:
    """
    Replicated estimate of a local event probability.

    With strict=False a torus too small for the bias bound only logs a
    warning instead of raising BiasBoundError.

    For pair_collinear_distance the result also carries the empirical
    correlation (P11 - m^2) / (m (1 - m)), with m the pooled edge frequency
    along the same axis.
    """
    if replicates < 2:
        raise ParameterError("At least two replicates are needed", field="replicates", value=replicates)
    _check_event(spec, event, L)
    geometry = geometry_for(spec, L)
    check_bias_bound(spec.p, geometry, get_config().simulation.bias_tolerance, strict=strict)

    worker = partial(_local_replicate, spec, geometry, event, master_seed)
    results = default_runner(runner).map(worker, replicates)
    values = [value for value, _ in results]

    extra = {}
    if event.kind == LocalEvent.PAIR_COLLINEAR_DISTANCE:
        m = float(np.mean([edge for _, edge in results]))
        p11 = np.asarray(values)
        if 0.0 < m < 1.0:
            scale = m * (1.0 - m)
            extra["correlation"] = float((p11.mean() - m * m) / scale)
            extra["correlation_stderr"] = float(p11.std(ddof=1) / np.sqrt(p11.size) / scale)

    estimate = EstimateWithCI.from_values(values, master_seed, keep_values=keep_values, **extra)
    logger.info(
        "Local event estimated",
        model=spec.model.value,
        local_event=str(event),
        L=L,
        replicates=replicates,
        mean=estimate.mean,
        stderr=estimate.stderr,
    )
    return estimate
