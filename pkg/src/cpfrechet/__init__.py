"""Approximate Fréchet distance for realistic (c-packed) polygonal curves.

The main entry points are :func:`approximate_decide` (one-sided decision at
a threshold) and :func:`approximate_frechet` (a ``(1+eps)`` approximation of
the distance). Quadratic-time exact references live in :mod:`.baseline`.
"""

from .baseline import continuous_decide, continuous_frechet, discrete_frechet
from .curves import Curve, Witness, gen_cpacked, packedness_estimate, point_at, read_curve, total_length, write_curve
from .decomposition import Decomposition, Part, PartKind, decompose, piece_radius
from .errors import ContractError, FrechetError, GenerationError, InputError, ParameterError
from .freespace import ComplexityStats, DecisionOutcome, Verdict, approximate_decide, complexity_stats
from .reach import ReachFront
from .search import ApproxResult, approximate_frechet

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "ComplexityStats",
    "ContractError",
    "Curve",
    "DecisionOutcome",
    "Decomposition",
    "FrechetError",
    "GenerationError",
    "InputError",
    "ParameterError",
    "Part",
    "PartKind",
    "ReachFront",
    "Verdict",
    "Witness",
    "approximate_decide",
    "approximate_frechet",
    "complexity_stats",
    "continuous_decide",
    "continuous_frechet",
    "decompose",
    "discrete_frechet",
    "gen_cpacked",
    "packedness_estimate",
    "piece_radius",
    "point_at",
    "read_curve",
    "total_length",
    "write_curve",
]
