"""
Plane slices of three-dimensional samples.

The independent model restricted to a plane is the two-dimensional
independent model, so the blue-vertex frequency of a slice must match the
two-dimensional formula. The one-choice model does not restrict this way:
its slice keeps the three-dimensional edge density.
"""

from functools import partial
from typing import Optional, Tuple

import structlog

from seglat.analytic.local import lambda_one_choice, vertex_blue_prob_independent
from seglat.core.exceptions import ParameterError
from seglat.lattice.geometry import Boundary, make_geometry
from seglat.lattice.rng import RngStream
from seglat.models.coloring import ModelTag, restrict_to_plane
from seglat.montecarlo.models import EmbeddingReport, EstimateWithCI, ModelSpec
from seglat.montecarlo.runner import ReplicateRunner, default_runner
from seglat.montecarlo.sampling import sample_edges

logger = structlog.get_logger(__name__)

SLICE = {2: 0}


def _slice_replicate(p: float, lam: float, L: int, master_seed: int, index: int) -> Tuple[float, float]:
    geometry = make_geometry(3, [L, L, L], Boundary.TORUS)
    stream = RngStream(master_seed=master_seed, stream_id=index)
    independent = sample_edges(ModelSpec(model=ModelTag.INDEPENDENT, d=3, p=p, lam=lam), geometry, stream)
    one_choice = sample_edges(ModelSpec(model=ModelTag.ONE_CHOICE, d=3, p=p), geometry, stream)
    vertex = float(restrict_to_plane(independent, SLICE).blue_sites().mean())
    edge = float(restrict_to_plane(one_choice, SLICE).blue.mean())
    return vertex, edge


def embedding_check(
    p: float,
    lam: float,
    L: int,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner] = None,
) -> EmbeddingReport:
    """Slice z = 0 of 3-d tori: independent vertex-blue and one-choice edge density."""
    if replicates < 2:
        raise ParameterError("At least two replicates are needed", field="replicates", value=replicates)
    results = default_runner(runner).map(partial(_slice_replicate, p, lam, L, master_seed), replicates)

    report = EmbeddingReport(
        independent_vertex=EstimateWithCI.from_values([v for v, _ in results], master_seed, keep_values=False),
        independent_target=float(vertex_blue_prob_independent(2, p, lam)),
        one_choice_edge=EstimateWithCI.from_values([e for _, e in results], master_seed, keep_values=False),
        one_choice_target=float(lambda_one_choice(3)),
        lower_dimensional_target=float(lambda_one_choice(2)),
    )
    logger.info(
        "Embedding check",
        p=p,
        lam=lam,
        L=L,
        vertex=report.independent_vertex.mean,
        vertex_target=report.independent_target,
        edge=report.one_choice_edge.mean,
    )
    return report
