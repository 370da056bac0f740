"""Assignment-based distances between finite simple attributed graphs.

Three metrics built on optimal vertex matching: the absolute GTT metric and
the size-normalized GOSPA1/GOSPA2 metrics.  All reduce, after padding with
auxiliary vertices, to a quadratic assignment problem solved exactly (small
sizes), by a Frank--Wolfe relaxation heuristic, or by an auction heuristic
with externalities.  A simulation harness, a BQP exporter and metric-space
permutation tests round out the package.
"""

from . import simgen, stats
from .attrmetrics import (AttributeMetric, absolute_difference, custom, discrete,
                          euclidean_cutoff, validate_on_samples, zero)
from .auction import AuctionParams, solve_auction
from .bqp import BqpInstance, export_bqp, read_bqp, write_bqp
from .config import GOSPA1, GOSPA2, GTT, VARIANTS, MetricConfig
from .costs import build_cost_matrices, evaluate_permutation
from .errors import (AgdistError, DegenerateWithinSS, EdgeMetricNotZero, EmptyPair,
                     GraphFormatError, NoFullAssignment, NonFinite, NotAPermutation,
                     PenaltyViolation, TooLarge, UnsupportedEdgeMetric)
from .exact import solve_exact
from .faq import FaqParams, relaxed_objective, solve_faq
from .graphs import AttributedGraph, empty_graph, read_graph, write_graph
from .lap import solve_lap
from .metrics import (BoundReport, CounterexampleVector, DistanceRequest, check_bounds,
                      counterexample_vectors, distance, faq_supported,
                      reduce_to_point_pattern)
from .padding import PaddedPair, pad, pad_gospa, pad_gtt
from .result import CostBreakdown, MatchingResult

__version__ = "0.1.0"

__all__ = [
    "AttributeMetric", "absolute_difference", "custom", "discrete", "euclidean_cutoff",
    "validate_on_samples", "zero",
    "AuctionParams", "solve_auction",
    "BqpInstance", "export_bqp", "read_bqp", "write_bqp",
    "GOSPA1", "GOSPA2", "GTT", "VARIANTS", "MetricConfig",
    "build_cost_matrices", "evaluate_permutation",
    "AgdistError", "DegenerateWithinSS", "EdgeMetricNotZero", "EmptyPair",
    "GraphFormatError", "NoFullAssignment", "NonFinite", "NotAPermutation",
    "PenaltyViolation", "TooLarge", "UnsupportedEdgeMetric",
    "solve_exact",
    "FaqParams", "relaxed_objective", "solve_faq",
    "AttributedGraph", "empty_graph", "read_graph", "write_graph",
    "solve_lap",
    "BoundReport", "CounterexampleVector", "DistanceRequest", "check_bounds",
    "counterexample_vectors", "distance", "faq_supported", "reduce_to_point_pattern",
    "PaddedPair", "pad", "pad_gospa", "pad_gtt",
    "CostBreakdown", "MatchingResult",
]
