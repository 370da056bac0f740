"""Public distance API: padding + solver dispatch, bound checks, the
point-pattern reductions and the documented triangle-inequality
counterexamples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import attrmetrics
from .auction import AuctionParams, solve_auction
from .config import GOSPA2, GTT, MetricConfig
from .costs import _costs_for
from .errors import EdgeMetricNotZero, UnsupportedEdgeMetric
from .exact import DEFAULT_LIMIT, solve_exact
from .faq import FaqParams, solve_faq
from .graphs import AttributedGraph
from .lap import solve_lap
from .padding import pad
from .result import CostBreakdown, MatchingResult

SOLVERS = ("exact", "faq", "auction", "auto")


@dataclass(frozen=True)
class DistanceRequest:
    g1: AttributedGraph
    g2: AttributedGraph
    cfg: MetricConfig
    solver: str = "auto"
    exact_limit: int = DEFAULT_LIMIT
    faq_params: Optional[FaqParams] = None
    auction_params: Optional[AuctionParams] = None

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}; expected one of {SOLVERS}")


def _graph_key(g: AttributedGraph) -> tuple:
    return (g.n, repr(g.vertex_attrs), repr(sorted(g.edge_attrs.items())))


def _empty_result() -> MatchingResult:
    return MatchingResult(permutation=(), distance=0.0, objective=0.0,
                          breakdown=CostBreakdown(0.0, 0.0, 0.0), solver="trivial")


def faq_supported(g1: AttributedGraph, g2: AttributedGraph, cfg: MetricConfig) -> bool:
    """Whether the pair's edge costs admit the scalar weight form FAQ needs."""
    try:
        pad(g1, g2, cfg).costs.edge_weight_matrices()
        return True
    except UnsupportedEdgeMetric:
        return False


def distance(req: DistanceRequest) -> MatchingResult:
    """Metric value between the two graphs of the request.

    Arguments are oriented canonically (smaller graph first, deterministic
    tiebreak) before padding, so ``distance`` is exactly symmetric in its
    inputs; the returned permutation is mapped back to the original
    orientation.  ``auto`` picks the exact solver up to padded size 10, the
    auction up to 30, and FAQ beyond that when the edge metric supports it
    (falling back to the auction otherwise).
    """
    g1, g2, cfg = req.g1, req.g2, req.cfg
    if g1.n == 0 and g2.n == 0:
        return _empty_result()
    swapped = (g1.n, _graph_key(g1)) > (g2.n, _graph_key(g2))
    if swapped:
        g1, g2 = g2, g1
    pair = pad(g1, g2, cfg)
    solver = req.solver
    if solver == "auto":
        if pair.n <= 10:
            solver = "exact"
        elif pair.n <= 30:
            solver = "auction"
        else:
            solver = "faq" if faq_supported(g1, g2, cfg) else "auction"
    if solver == "exact":
        res = solve_exact(pair, cfg, limit=req.exact_limit)
    elif solver == "faq":
        res = solve_faq(pair, cfg, params=req.faq_params)
    else:
        res = solve_auction(pair, cfg, params=req.auction_params)
    if swapped:
        inverse = np.argsort(np.asarray(res.permutation))
        res = MatchingResult(
            permutation=tuple(int(x) for x in inverse), distance=res.distance,
            objective=res.objective, breakdown=res.breakdown, solver=res.solver,
            iterations=res.iterations, wall_time=res.wall_time)
    return res


@dataclass(frozen=True)
class BoundReport:
    value: float
    bound: float
    passed: bool
    slack: float


def check_bounds(g1: AttributedGraph, g2: AttributedGraph, cfg: MetricConfig,
                 result: MatchingResult) -> BoundReport:
    """Compare a computed distance against its a-priori upper bound.

    GOSPA values are checked against the penalty; GTT against
    ``((n + m) C^p + (E + F) C_Y^p)^(1/p)`` with E, F the edge counts.

    Caveat: the GOSPA2 <= C2 inequality genuinely fails for strongly
    unbalanced pairs whose larger graph carries edges -- the forced value
    of d(empty, G) is ``(C2^p + e C_Y^p)^(1/p)`` with e in (0, 1/2], e.g.
    exactly ``(C2^p + C_Y^p/2)^(1/p)`` against a complete graph, whatever
    the penalty.  GOSPA2 stays below ``(C2^p + C_Y^p/2)^(1/p)`` always and
    below C2 whenever the smaller graph has at least half as many vertices.
    GOSPA1 <= C1 and the GTT bound hold unconditionally.
    """
    if cfg.is_relative:
        bound = cfg.penalty
    else:
        cy = cfg.c_y
        if math.isfinite(cy):
            bound = ((g1.n + g2.n) * cfg.penalty ** cfg.p
                     + (g1.num_edges + g2.num_edges) * cy ** cfg.p) ** (1.0 / cfg.p)
        else:
            bound = math.inf
    slack = bound - result.distance
    return BoundReport(value=result.distance, bound=bound,
                       passed=result.distance <= bound + 1e-9, slack=slack)


def reduce_to_point_pattern(g1: AttributedGraph, g2: AttributedGraph,
                            cfg: MetricConfig) -> float:
    """TT/OSPA distance of the vertex point patterns via one linear assignment.

    Valid only when the edge metric is identically zero with C_Y = 0, where
    the quadratic term vanishes and the graph metrics coincide with the
    point-pattern metrics.  Returns the same value as :func:`distance` with
    the exact solver, in O(N^3).
    """
    if cfg.edge_metric.kind != "zero" or cfg.c_y != 0:
        raise EdgeMetricNotZero("reduction requires the zero edge metric with C_Y = 0")
    if g1.n == 0 and g2.n == 0:
        return 0.0
    pair = pad(g1, g2, cfg)
    pc = _costs_for(pair, cfg)
    _, total = solve_lap(pc.vertex_costs)
    return pc.distance_from_objective(total)


@dataclass(frozen=True)
class CounterexampleVector:
    """A concrete graph triple with closed-form distance values."""

    name: str
    graphs: tuple
    cfg: MetricConfig
    expected: dict
    normalize_by_max_size: bool = False


def counterexample_vectors() -> list:
    """The two documented triangle-inequality counterexamples.

    (a) GOSPA2 with the too-small penalty C2 = C_X + C_Y/2 (value 1.5 for
    C_X = C_Y = 1): d(G1, G2) = C2 + C_Y/4 = 1.75 exceeds
    d(G1, G3) + d(G3, G2) = C2 + C_Y/6.  With the legal penalty
    C2 = C_X + C_Y = 2 the triangle inequality holds on the same triple.

    (b) GTT divided by max{m, n} with two points at distance 2C:
    2C on the direct route versus C/2 + C/2 through the two-point graph.

    The illegal configuration carries ``allow_invalid_penalty=True``; the
    normal API refuses it.
    """
    vm = attrmetrics.euclidean_cutoff(1.0)
    em = attrmetrics.discrete(1.0, no_edge_value=0)
    x1, x2, x3 = 1.0, 2.0, 0.0  # d(x3, x1) = d(x3, x2) = C_X = 1 under cutoff 1
    g1 = AttributedGraph([x3])
    g2 = AttributedGraph([x1, x2], {(0, 1): 1})
    g3 = AttributedGraph([x1, x2, x3], {(0, 1): 1})
    gospa2 = CounterexampleVector(
        name="gospa2_triangle",
        graphs=(g1, g2, g3),
        cfg=MetricConfig(variant=GOSPA2, p=1, penalty=1.5, vertex_metric=vm,
                         edge_metric=em, allow_invalid_penalty=True),
        expected={
            "d12": 1.75,            # C2 + C_Y/4
            "d13": 7.0 / 6.0,       # (2 C2 + C_Y/2) / 3
            "d32": 0.5,             # C2 / 3
            "d13_plus_d32": 1.5 + 1.0 / 6.0,
            "legal_penalty": 2.0,   # C_X + C_Y restores the triangle inequality
        })
    h1 = AttributedGraph([0.0])
    h2 = AttributedGraph([2.0])
    h3 = AttributedGraph([0.0, 2.0])
    gtt = CounterexampleVector(
        name="normalized_gtt",
        graphs=(h1, h2, h3),
        cfg=MetricConfig(variant=GTT, p=1, penalty=1.0,
                         vertex_metric=attrmetrics.absolute_difference(),
                         edge_metric=em),
        expected={"d12": 2.0, "d13": 0.5, "d32": 0.5, "d13_plus_d32": 1.0},
        normalize_by_max_size=True)
    return [gospa2, gtt]
