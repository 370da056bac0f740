"""Result containers shared by the evaluation layer and the solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class CostBreakdown(NamedTuple):
    """Additive parts of the raw matching objective.

    ``vertex_cost`` covers matched pairs of real vertices, ``edge_cost`` the
    full (scaled) edge term, ``penalty_cost`` the vertex-cost portion
    attributable to auxiliary matches.  The three sum to ``objective``.
    """

    vertex_cost: float
    edge_cost: float
    penalty_cost: float


@dataclass(frozen=True)
class MatchingResult:
    """A permutation together with its exactly re-evaluated cost.

    ``distance`` is the final metric value (rooted and, for GOSPA,
    normalized); ``objective`` is the raw assignment objective the solvers
    minimize.  ``permutation``  maps padded vertices of the first graph to
    padded vertices of the second (0-based).
    """

    permutation: tuple
    distance: float
    objective: float
    breakdown: CostBreakdown
    solver: str
    iterations: int = 0
    wall_time: float = 0.0
