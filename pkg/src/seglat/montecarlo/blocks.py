"""
Empirical block events on a free window [-6r, 6r]^2 of the independent model.

Every event has the same shape: along some set of parallel lines, look for a
line whose sites within distance 2r - 1 of a centre are unoccupied, whose
first occupied sites on both sides fall in bands of width w, and whose
segment through the centre is blue.
"""

from functools import partial
from typing import Optional, Tuple

import numpy as np
import structlog

from seglat.analytic.blocks import BlockParams, c_event_defined
from seglat.core.exceptions import ParameterError
from seglat.lattice.geometry import Boundary, make_geometry
from seglat.lattice.rng import RngStream, StreamRole
from seglat.lattice.sites import sample_sites
from seglat.models.coloring import independent_blue
from seglat.models.segments import feasible_segments
from seglat.montecarlo.models import BlockEventEstimates, EstimateWithCI
from seglat.montecarlo.runner import ReplicateRunner, default_runner

logger = structlog.get_logger(__name__)


def _crossing(
    occupied: np.ndarray,
    blue: np.ndarray,
    line_axis: int,
    lines: range,
    center: int,
    width: int,
    r: int,
) -> bool:
    """Some line in `lines` carries a blue segment crossing `center` with endpoints in the bands."""
    occ = occupied if line_axis == 1 else occupied.T
    edge = blue[line_axis] if line_axis == 1 else blue[line_axis].T
    rows = slice(lines.start, lines.stop)
    gap = occ[rows, center - (2 * r - 1) : center + 2 * r]
    ahead = occ[rows, center + 2 * r : center + 2 * r + width]
    behind = occ[rows, center - 2 * r - width + 1 : center - 2 * r + 1]
    hit = ~gap.any(axis=1) & ahead.any(axis=1) & behind.any(axis=1) & edge[rows, center]
    return bool(hit.any())


def block_events(occupied: np.ndarray, blue: np.ndarray, r: int) -> Tuple[bool, Optional[bool], Optional[bool]]:
    """(A_{e1}, C_{e1}, A(o) and C(o)) on a window whose origin sits at index 6r."""
    o = 6 * r
    a_events = [
        _crossing(occupied, blue, 1, range(o + r, o + 2 * r), o, r, r),  # A_{e1}
        _crossing(occupied, blue, 1, range(o - 2 * r + 1, o - r + 1), o, r, r),  # A_{-e1}
        _crossing(occupied, blue, 0, range(o + r, o + 2 * r), o, r, r),  # A_{e2}
        _crossing(occupied, blue, 0, range(o - 2 * r + 1, o - r + 1), o, r, r),  # A_{-e2}
    ]
    if not c_event_defined(r):
        return a_events[0], None, None

    third = r // 3
    band = range(o - third, o + third)
    w = 2 * third
    c_events = [
        _crossing(occupied, blue, 0, band, o + 3 * r, w, r),  # C_{e1}
        _crossing(occupied, blue, 0, band, o - 3 * r, w, r),  # C_{-e1}
        _crossing(occupied, blue, 1, band, o + 3 * r, w, r),  # C_{e2}
        _crossing(occupied, blue, 1, band, o - 3 * r, w, r),  # C_{-e2}
    ]
    return a_events[0], c_events[0], all(a_events) and all(c_events)


def _block_replicate(bp: BlockParams, master_seed: int, index: int) -> Tuple[bool, Optional[bool], Optional[bool]]:
    side = 12 * bp.r + 1
    geometry = make_geometry(2, [side, side], Boundary.FREE)
    stream = RngStream(master_seed=master_seed, stream_id=index)
    config = sample_sites(geometry, bp.p, stream.seed_for(StreamRole.SITES))
    edges = independent_blue(config, feasible_segments(config), bp.lam, stream.seed_for(StreamRole.COLORS))
    return block_events(config.occupied, edges.blue, bp.r)


def block_event_mc(
    bp: BlockParams,
    replicates: int,
    master_seed: int,
    runner: Optional[ReplicateRunner] = None,
) -> BlockEventEstimates:
    """Replicated estimates of P(A_{e1}), and of P(C_{e1}) and the good-block event when 3 | r."""
    if replicates < 2:
        raise ParameterError("At least two replicates are needed", field="replicates", value=replicates)
    results = default_runner(runner).map(partial(_block_replicate, bp, master_seed), replicates)

    a_e1 = EstimateWithCI.from_values([float(a) for a, _, _ in results], master_seed, keep_values=False)
    c_e1 = good = None
    if c_event_defined(bp.r):
        c_e1 = EstimateWithCI.from_values([float(c) for _, c, _ in results], master_seed, keep_values=False)
        good = EstimateWithCI.from_values([float(g) for _, _, g in results], master_seed, keep_values=False)
    logger.info(
        "Block events estimated",
        r=bp.r,
        q=bp.q,
        lam=bp.lam,
        a_e1=a_e1.mean,
        c_e1=c_e1.mean if c_e1 else None,
    )
    return BlockEventEstimates(a_e1=a_e1, c_e1=c_e1, good=good)
