"""Piece-pair regions reduced to separated one-dimensional curves."""

from .exits import EntryExitSets, find_sigma_exits, pi_exits_from_pi, sigma_exits_from_pi, solve_reduced
from .greedy import (
    Separated1D,
    greedy_decide,
    max_greedy_step_pi,
    max_greedy_step_sigma,
    min_greedy_step_pi,
    min_greedy_step_sigma,
    stop_pi,
    stop_sigma,
    tracing,
)
from .rangeindex import INF, NO_INDEX, RangeIndex, build_range_index
from .reduction import (
    PreparedInstance,
    SideVertices,
    grid_resolution,
    project_pieces,
    round_and_prepare,
    solve_region_pieces,
)

__all__ = [
    "EntryExitSets",
    "INF",
    "NO_INDEX",
    "PreparedInstance",
    "RangeIndex",
    "Separated1D",
    "SideVertices",
    "build_range_index",
    "find_sigma_exits",
    "greedy_decide",
    "grid_resolution",
    "max_greedy_step_pi",
    "max_greedy_step_sigma",
    "min_greedy_step_pi",
    "min_greedy_step_sigma",
    "pi_exits_from_pi",
    "project_pieces",
    "round_and_prepare",
    "sigma_exits_from_pi",
    "solve_reduced",
    "solve_region_pieces",
    "stop_pi",
    "stop_sigma",
    "tracing",
]
