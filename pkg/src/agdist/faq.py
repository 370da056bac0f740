"""Frank--Wolfe heuristic on the doubly stochastic relaxation.

Applies when the p-th-power edge distances are squared differences of a
scalar weight per edge attribute, so the quadratic term takes the trace
form ``-c_n tr(E1 D E2' D')`` with (weighted) adjacency matrices E1, E2 and
a linear vertex-cost term.  Iterations start at the barycentre, pick the
descent direction by a linear assignment on the gradient, take the exact
optimal step of the quadratic restricted to the segment, and the final
iterate is projected to a permutation by one more linear assignment.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .costs import _costs_for, evaluate_permutation
from .lap import solve_lap
from .padding import PaddedPair
from .result import MatchingResult


@dataclass(frozen=True)
class FaqParams:
    max_fw_iters: int = 100
    tol: float = 1e-8          # relative objective-change stopping threshold
    start: str = "barycentre"  # the only supported start point

    def __post_init__(self):
        if self.max_fw_iters < 1:
            raise ValueError("max_fw_iters must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.start != "barycentre":
            raise ValueError(f"unsupported start point {self.start!r}")


def _trace_form(pc):
    """(E1, E2, L, scale) of the relaxed objective, or raises UnsupportedEdgeMetric."""
    e1, e2 = pc.edge_weight_matrices()
    return e1, e2, pc.vertex_costs, pc.edge_scale


def relaxed_objective(pair: PaddedPair, cfg, d: np.ndarray) -> float:
    """Value of -c_n tr(E1 D E2' D') + tr(L D') at a doubly stochastic D."""
    pc = _costs_for(pair, cfg if cfg is not None else pair.cfg)
    e1, e2, ell, scale = _trace_form(pc)
    return float(-scale * ((e1 @ d @ e2.T) * d).sum() + (ell * d).sum())


def solve_faq(pair: PaddedPair, cfg=None, params: FaqParams | None = None) -> MatchingResult:
    cfg = pair.cfg if cfg is None else cfg
    params = params or FaqParams()
    start = time.perf_counter()
    pc = _costs_for(pair, cfg)
    n = pair.n
    if n == 0:
        res = evaluate_permutation(pair, cfg, ())
        return MatchingResult(permutation=(), distance=0.0, objective=res.objective,
                              breakdown=res.breakdown, solver="faq", iterations=0,
                              wall_time=time.perf_counter() - start)
    e1, e2, ell, scale = _trace_form(pc)

    def objective(d):
        return float(-scale * ((e1 @ d @ e2.T) * d).sum() + (ell * d).sum())

    d = np.full((n, n), 1.0 / n)
    f_prev = objective(d)
    iters = 0
    for iters in range(1, params.max_fw_iters + 1):
        grad = -scale * (e1.T @ d @ e2 + e1 @ d @ e2.T) + ell
        direction, _ = solve_lap(grad)
        s = np.zeros((n, n))
        s[np.arange(n), direction] = 1.0
        delta = s - d
        # objective along the segment is a*alpha^2 + b*alpha + const
        a = -scale * ((e1 @ delta @ e2.T) * delta).sum()
        b = (-scale * (((e1 @ delta @ e2.T) * d).sum() + ((e1 @ d @ e2.T) * delta).sum())
             + (ell * delta).sum())
        if a > 0:
            alpha = min(1.0, max(0.0, -b / (2.0 * a)))
        else:
            alpha = 1.0  # b <= 0 by choice of the direction, so the far end wins
        if alpha > 0:
            d = d + alpha * delta
        f_new = objective(d)
        if abs(f_new - f_prev) <= params.tol * max(1.0, abs(f_prev)) or alpha == 0.0:
            f_prev = f_new
            break
        f_prev = f_new
    perm, _ = solve_lap(-d)  # project to the nearest permutation
    res = evaluate_permutation(pair, cfg, perm)
    return MatchingResult(
        permutation=res.permutation, distance=res.distance, objective=res.objective,
        breakdown=res.breakdown, solver="faq", iterations=iters,
        wall_time=time.perf_counter() - start)
