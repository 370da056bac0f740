"""Auction heuristic with externalities for the padded assignment problem.

Vertices of the first graph bid, in index order, for vertices of the second.
A bid's personal value is a constant benefit minus the bidder's share of the
objective: its vertex cost, its incident edge costs against currently
assigned partners plus an optimistic optimal pairing of the rest, a
compensation for the edge-cost changes the bid inflicts on third-party
matches, and the object's price.  Prices only increase; the run stops when a
sweep changes nothing, when a full assignment has been reached ``stop_at``
times, or after ``maxiter`` sweeps, and the best full assignment seen is
returned after exact re-evaluation.  Works for arbitrary edge metrics.

Bidder/object roles are fixed (first graph bids); the occasionally useful
role switch is not implemented.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .config import GTT
from .costs import PairCosts, _costs_for, evaluate_permutation
from .errors import NoFullAssignment
from .lap import solve_lap
from .padding import PaddedPair
from .result import MatchingResult


@dataclass(frozen=True)
class AuctionParams:
    epsilon: float = 0.01  # bid increment floor
    stop_at: int = 3       # stop after this many full assignments
    maxiter: int = 100     # cap on bidding sweeps

    def __post_init__(self):
        if self.epsilon <= 0 or self.stop_at <= 0 or self.maxiter <= 0:
            raise ValueError("epsilon, stop_at and maxiter must all be positive")


class _EdgeOps:
    """Edge-distance sums between attribute code vectors of the two graphs."""

    def __init__(self, pc: PairCosts):
        self.table = pc.cost_table
        self.kind = pc.cfg.edge_metric.kind
        self.p = pc.cfg.p
        self.values = pc.edge_values
        self.aux_code = pc.aux_code
        self.n_codes = len(pc.edge_values)

    def paired_sum(self, codes_a, codes_b) -> float:
        return float(self.table[codes_a, codes_b].sum())

    def best_sum(self, codes_a, codes_b) -> float:
        """Minimum total distance over pairings of the two code multisets."""
        if len(codes_a) == 0 or self.kind == "zero":
            return 0.0
        if self.kind == "discrete":
            # every mismatch costs the same, so count the overlap
            ca = np.bincount(codes_a, minlength=self.n_codes)
            cb = np.bincount(codes_b, minlength=self.n_codes)
            matched = np.minimum(ca, cb).sum()
            return float(self.table.max() * (len(codes_a) - matched))
        if self.kind == "absolute_difference" and (
                self.aux_code is None or
                (self.aux_code not in codes_a and self.aux_code not in codes_b)):
            va = np.sort([float(self.values[c]) for c in codes_a])
            vb = np.sort([float(self.values[c]) for c in codes_b])
            # sorted pairing is optimal for the convex cost |a - b|^p
            return float(np.sum(np.abs(va - vb) ** self.p))
        _, total = solve_lap(self.table[np.ix_(codes_a, codes_b)])
        return total


def _run(pc: PairCosts, params: AuctionParams, price_log=None):
    """Core bidding loop; returns (best_perm_or_None, partial, sweeps, best_obj)."""
    n = pc.n
    cfg = pc.cfg
    if cfg.variant == GTT:
        vfact = efact = 1.0
    else:
        vfact = 1.0 / n
        efact = 1.0 / (n * (n - 1)) if n > 1 else 0.0
    ops = _EdgeOps(pc)
    v = pc.vertex_costs
    codes1, codes2 = pc.codes1, pc.codes2
    all_idx = np.arange(n)
    max_edge = float(pc.cost_table.max()) if pc.cost_table.size else 0.0
    # arbitrary benefit constant; keeps personal values positive early on
    maxcost = vfact * (float(v.max()) if v.size else 0.0) + 0.5 * efact * 3 * n * max_edge + 1.0

    bidder2obj = np.full(n, -1, dtype=np.int64)
    obj2bidder = np.full(n, -1, dtype=np.int64)
    prices = np.zeros(n)

    def persvals(i):
        edgedists = np.zeros(n)
        compensations = np.zeros(n)
        j0 = bidder2obj[i]
        for j in range(n):
            i0 = obj2bidder[j]
            # hypothetical assignment after i bids for j
            hypo = bidder2obj.copy()
            if i0 >= 0 and i0 != i:
                hypo[i0] = -1
            hypo[i] = j
            abidnew = np.flatnonzero(hypo >= 0)
            aobjnew = hypo[abidnew]
            edgedists[j] = ops.paired_sum(codes1[i, abidnew], codes2[j, aobjnew])
            free_b = np.setdiff1d(all_idx, abidnew, assume_unique=True)
            free_o = np.setdiff1d(all_idx, aobjnew, assume_unique=True)
            edgedists[j] += ops.best_sum(codes1[i, free_b], codes2[j, free_o])
            abid = abidnew[abidnew != i]
            aobj = hypo[abid]
            if j0 >= 0:  # compensation for releasing i's previous object
                before = ops.paired_sum(codes1[i, abid], codes2[j0, aobj])
                after = ops.paired_sum(codes1[i, abid], codes2[j, aobj])
                compensations[j] = after - before
            if i0 >= 0:  # compensation for displacing j's previous owner
                before = ops.paired_sum(codes1[i0, abid], codes2[j, aobj])
                after = ops.paired_sum(codes1[i, abid], codes2[j, aobj])
                compensations[j] += after - before
        return maxcost - v[i, :] * vfact - (edgedists + compensations) * efact / 2.0 - prices

    best_obj = np.inf
    best_perm = None
    change = True
    fullmatch = False
    fullmatchnum = 0
    sweeps = 0
    while change and fullmatchnum < params.stop_at and sweeps < params.maxiter:
        change = False
        for i in range(n):
            vals = persvals(i)
            j = int(np.argmax(vals))
            if bidder2obj[i] != j:
                change = True
            i0 = obj2bidder[j]
            if i0 >= 0 and i0 != i:
                bidder2obj[i0] = -1
            j_prev = bidder2obj[i]
            if j_prev >= 0 and j_prev != j:
                obj2bidder[j_prev] = -1
            bidder2obj[i] = j
            obj2bidder[j] = i
            if n == 1:
                second = vals[j] - params.epsilon
            else:
                rest = np.delete(vals, j)
                second = float(rest.max())
            prices[j] += vals[j] - second + params.epsilon
            if price_log is not None:
                price_log.append(prices.copy())
            if (bidder2obj >= 0).all():
                if not fullmatch:
                    fullmatch = True
                    fullmatchnum += 1
                cost = pc.objective(bidder2obj)
                if cost < best_obj:
                    best_obj = cost
                    best_perm = bidder2obj.copy()
            else:
                fullmatch = False
        sweeps += 1
    return best_perm, bidder2obj.copy(), sweeps, best_obj


def solve_auction(pair: PaddedPair, cfg=None, params: AuctionParams | None = None) -> MatchingResult:
    """Best full assignment found by the bidding heuristic.

    Raises :class:`NoFullAssignment` when termination occurs without a
    complete matching ever being reached; the exception carries the best
    partial assignment for diagnostics.
    """
    cfg = pair.cfg if cfg is None else cfg
    params = params or AuctionParams()
    start = time.perf_counter()
    pc = _costs_for(pair, cfg)
    if pair.n == 0:
        res = evaluate_permutation(pair, cfg, ())
        return MatchingResult(permutation=(), distance=0.0, objective=res.objective,
                              breakdown=res.breakdown, solver="auction", iterations=0,
                              wall_time=time.perf_counter() - start)
    best_perm, partial, sweeps, _ = _run(pc, params)
    if best_perm is None:
        raise NoFullAssignment(
            f"no complete matching within {sweeps} sweeps "
            f"({int((partial >= 0).sum())}/{pair.n} bidders assigned)", partial=partial)
    res = evaluate_permutation(pair, cfg, best_perm)
    return MatchingResult(
        permutation=res.permutation, distance=res.distance, objective=res.objective,
        breakdown=res.breakdown, solver="auction", iterations=sweeps,
        wall_time=time.perf_counter() - start)
