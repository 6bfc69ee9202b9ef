"""Optimal assignment of weights for the weighted 1-center problem."""
from .decision import DecisionWitness, PointWeightPair, decide
from .errors import (
    DegenerateError,
    InstanceFormatError,
    NonMonotoneOracleError,
    OracleScaleError,
    PreconditionError,
    WassignError,
)
from .geom import Circle, Point, WeightedPoint
from .instances import GeneratorSpec, count_distinct_centers, gen_lower_bound, gen_random
from .optimizer import CandidateEvent, multilist_interval_search, solve_exact, solve_parametric
from .oracle import brute_force_solve
from .smallk import decide_on_boundary, solve_small_k
from .wcenter import Instance, SolveResult, greedy_assignment, weighted_one_center

__version__ = "0.1.0"

__all__ = [
    "CandidateEvent", "Circle", "DecisionWitness", "DegenerateError", "GeneratorSpec",
    "Instance", "InstanceFormatError", "NonMonotoneOracleError", "OracleScaleError",
    "Point", "PointWeightPair", "PreconditionError", "SolveResult", "WassignError",
    "WeightedPoint", "brute_force_solve", "count_distinct_centers", "decide",
    "decide_on_boundary", "gen_lower_bound", "gen_random", "greedy_assignment",
    "multilist_interval_search", "solve_exact", "solve_parametric", "solve_small_k",
    "weighted_one_center",
]
