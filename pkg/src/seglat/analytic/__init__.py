"""
Exact formulas used as ground truth by the Monte Carlo checks.

Usage:
    from fractions import Fraction
    from seglat.analytic import lambda_one_choice, format_exact

    format_exact(lambda_one_choice(2))  # "7/16"
"""

from .blocks import (
    BlockParams,
    block_event_A_prob,
    block_event_C_prob,
    block_r,
    good_block_lower_bound,
)
from .branching import BranchingMeans, branching_means, subcritical_bound
from .compass import (
    compass_matrix,
    compass_spectral_radius,
    compass_spectral_radius_direct,
    compass_threshold,
    power_iteration,
)
from .local import (
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
from .regions import PhaseRegion, classify_region

__all__ = [
    "lambda_one_choice",
    "vertex_blue_prob_one_choice",
    "collinear_pair_prob_one_choice",
    "perp_pair_prob_one_choice",
    "vertex_blue_prob_independent",
    "collinear_pair_prob_independent",
    "perp_pair_prob_independent",
    "collinear_corr_independent",
    "format_exact",
    "BranchingMeans",
    "branching_means",
    "subcritical_bound",
    "compass_matrix",
    "compass_spectral_radius",
    "compass_spectral_radius_direct",
    "compass_threshold",
    "power_iteration",
    "BlockParams",
    "block_r",
    "block_event_A_prob",
    "block_event_C_prob",
    "good_block_lower_bound",
    "PhaseRegion",
    "classify_region",
]
