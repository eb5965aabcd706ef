"""
Feasible segments and the colouring rules built on them.

Usage:
    from seglat.models import feasible_segments, one_choice_blue

    segments = feasible_segments(config)
    choices, blue = one_choice_blue(config, segments, choice_seed=11)
"""

from .coloring import (
    UNOCCUPIED,
    BlueEdgeSet,
    ChoiceAssignment,
    ModelTag,
    blue_edge_set_from_json,
    blue_edge_set_to_json,
    corrupted_compass_turquoise,
    green_segments,
    independent_blue,
    mixed_percolation,
    one_choice_blue,
    restrict_independent_to_occupied_pairs,
    restrict_to_plane,
    sample_choices,
)
from .segments import NO_SEGMENT, Segment, SegmentSet, feasible_segments

__all__ = [
    "NO_SEGMENT",
    "UNOCCUPIED",
    "Segment",
    "SegmentSet",
    "feasible_segments",
    "ModelTag",
    "ChoiceAssignment",
    "BlueEdgeSet",
    "sample_choices",
    "green_segments",
    "one_choice_blue",
    "independent_blue",
    "corrupted_compass_turquoise",
    "mixed_percolation",
    "restrict_independent_to_occupied_pairs",
    "restrict_to_plane",
    "blue_edge_set_to_json",
    "blue_edge_set_from_json",
]
