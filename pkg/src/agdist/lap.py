"""Linear assignment kernel.

Thin contract wrapper around scipy's Jonker--Volgenant-class solver; used by
the Frank--Wolfe heuristic for direction finding and projection, by the
point-pattern reduction and by the auction edge bookkeeping.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import NonFinite


def solve_lap(costs):
    """Minimum-cost perfect matching of a square cost matrix.

    Returns ``(assignment, total)`` with ``assignment[i]`` the column matched
    to row i and ``total = sum_i costs[i, assignment[i]]``.  Raises
    :class:`NonFinite` on NaN or infinite entries.
    """
    c = np.asarray(costs, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {c.shape}")
    if c.size and not np.isfinite(c).all():
        raise NonFinite("cost matrix contains non-finite entries")
    rows, cols = linear_sum_assignment(c)
    assignment = np.empty(c.shape[0], dtype=np.int64)
    assignment[rows] = cols
    return assignment, float(c[rows, cols].sum())
