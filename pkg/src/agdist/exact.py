"""Globally optimal assignment by exhaustion or depth-first branch and bound.

Exhaustive enumeration handles padded sizes up to 8; beyond that a DFS over
partial assignments prunes with an admissible bound: cost so far plus, for
each free column, the minimum over the remaining rows of vertex cost plus
edge cost against the assigned prefix (interactions among remaining rows
are bounded below by zero).  Auxiliary vertices created by padding are
mutually interchangeable, which the search exploits: at most one free
auxiliary column is branched on per node, and once only auxiliary rows
remain the assignment is completed in one step.  The incumbent is seeded
from cheap heuristics.  None of this affects optimality.
"""

from __future__ import annotations

import itertools
import time

import numpy as np

from .costs import PairCosts, _costs_for, evaluate_permutation
from .errors import TooLarge, UnsupportedEdgeMetric
from .lap import solve_lap
from .padding import PaddedPair
from .result import MatchingResult

DEFAULT_LIMIT = 12  # exact search is impractical from roughly this size on

_PERM_CACHE: dict = {}


def _all_perms(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return _PERM_CACHE[n]


def _enumerate(pc: PairCosts):
    n = pc.n
    perms = _all_perms(n)
    objectives = pc.vertex_costs[np.arange(n), perms].sum(axis=1)
    tensor = pc.tensor()
    for i in range(n):
        for i2 in range(i + 1, n):
            objectives = objectives + pc.edge_scale * tensor[i, i2][perms[:, i], perms[:, i2]]
    best = int(np.argmin(objectives))
    return perms[best], len(perms)


def _seed_incumbent(pc: PairCosts):
    """Cheap upper bounds: vertex-only LAP completion, plus FAQ when usable."""
    from .faq import solve_faq

    perm, _ = solve_lap(pc.vertex_costs)
    best_perm = np.asarray(perm, dtype=np.int64)
    best_obj = pc.objective(best_perm)
    try:
        res = solve_faq(pc.pair, pc.cfg)
        if res.objective < best_obj:
            best_obj = res.objective
            best_perm = np.asarray(res.permutation, dtype=np.int64)
    except UnsupportedEdgeMetric:
        pass
    return best_perm, best_obj


def _branch_and_bound(pc: PairCosts):
    n = pc.n
    v = pc.vertex_costs
    scale = pc.edge_scale
    # pair interaction[r, c] is the (rows x cols) matrix of scaled edge costs
    inter = (scale * pc.tensor()).transpose(0, 2, 1, 3).copy()
    aux_cols = pc.pair.aux_mask2
    row_order = np.concatenate(
        [np.flatnonzero(~pc.pair.aux_mask1), np.flatnonzero(pc.pair.aux_mask1)])
    n_real = int((~pc.pair.aux_mask1).sum())

    seed_perm, seed_obj = _seed_incumbent(pc)
    best = {"obj": seed_obj, "perm": seed_perm, "nodes": 0}
    perm = np.full(n, -1, dtype=np.int64)
    free = np.ones(n, dtype=bool)
    acc = np.zeros((n, n))  # accumulated edge cost against the assigned prefix

    def recurse(depth, cost):
        best["nodes"] += 1
        free_cols = np.flatnonzero(free)
        if depth >= n_real:
            # interchangeable auxiliary rows: any completion is optimal
            tail = row_order[depth:]
            perm[tail] = free_cols
            obj = pc.objective(perm)
            if obj < best["obj"]:
                best["obj"] = obj
                best["perm"] = perm.copy()
            perm[tail] = -1
            return
        row = row_order[depth]
        # per-column minima of vertex cost plus edge cost to the assigned
        # prefix over the remaining rows; interactions among remaining rows
        # are bounded below by zero, so this stays admissible (and only
        # grows when more rows get assigned)
        remaining = row_order[depth:]
        lower = v[np.ix_(remaining, free_cols)] + acc[np.ix_(remaining, free_cols)]
        steps = lower[0]
        if len(remaining) > 1:
            rest = lower[1:].min(axis=0)
            child_bounds = cost + steps + (rest.sum() - rest)
        else:
            child_bounds = cost + steps
        order = np.argsort(steps, kind="stable")
        have_aux = False
        for idx in order:
            col = int(free_cols[idx])
            if aux_cols[col]:
                if have_aux:
                    continue
                have_aux = True
            if child_bounds[idx] >= best["obj"] + 1e-12:
                continue
            free[col] = False
            perm[row] = col
            acc_inc = inter[row, col]
            np.add(acc, acc_inc, out=acc)
            recurse(depth + 1, cost + float(steps[idx]))
            np.subtract(acc, acc_inc, out=acc)
            perm[row] = -1
            free[col] = True

    recurse(0, 0.0)
    return best["perm"], best["nodes"]


def solve_exact(pair: PaddedPair, cfg=None, limit: int = DEFAULT_LIMIT) -> MatchingResult:
    """Globally optimal matching of the padded pair.

    Raises :class:`TooLarge` when the padded size exceeds ``limit``
    (default 12).
    """
    cfg = pair.cfg if cfg is None else cfg
    if pair.n > limit:
        raise TooLarge(f"padded size {pair.n} exceeds exact-solver limit {limit}")
    start = time.perf_counter()
    pc = _costs_for(pair, cfg)
    if pair.n == 0:
        perm, nodes = np.empty(0, dtype=np.int64), 0
    elif pair.n <= 8:
        perm, nodes = _enumerate(pc)
    else:
        perm, nodes = _branch_and_bound(pc)
    res = evaluate_permutation(pair, cfg, perm)
    return MatchingResult(
        permutation=res.permutation, distance=res.distance, objective=res.objective,
        breakdown=res.breakdown, solver="exact", iterations=nodes,
        wall_time=time.perf_counter() - start)
