"""Cost evaluation for padded pairs: vertex/edge cost matrices and the
assignment objective for a given permutation.

All p-th powers are computed once and cached; the final 1/p root (and the
GOSPA size normalization) is applied only to totals, which leaves the
minimizer unchanged.  Edge attributes are factorized into a small shared
vocabulary with a precomputed table of p-th-power distances, so permutation
costs reduce to integer gathers.  Everything here is reentrant and free of
side effects on the inputs.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .config import GTT, MetricConfig
from .errors import GraphFormatError, NotAPermutation, UnsupportedEdgeMetric
from .padding import PaddedPair
from .result import CostBreakdown, MatchingResult

_TENSOR_CAP = 40  # 4-index edge tensor only below this padded size


class PairCosts:
    """Precomputed cost structure of a padded pair under its config."""

    def __init__(self, pair: PaddedPair):
        self.pair = pair
        self.cfg = pair.cfg
        self.n = pair.n
        if self.cfg.variant == GTT:
            self.edge_scale = 1.0
        else:
            self.edge_scale = 1.0 / (self.n - 1) if self.n > 1 else 0.0
        self._build_vertex_costs()
        self._build_edge_codes()
        self._tensor = None

    # -- construction -------------------------------------------------

    def _build_vertex_costs(self):
        cfg, pair, n = self.cfg, self.pair, self.n
        v = np.zeros((n, n))
        real1 = ~pair.aux_mask1
        real2 = ~pair.aux_mask2
        if real1.any() and real2.any():
            base = cfg.vertex_metric.pairwise(pair.g1.vertex_attrs, pair.g2.vertex_attrs)
            v[np.ix_(real1, real2)] = base ** cfg.p
        aux = cfg.aux_vertex_cost_p
        if cfg.variant == "gospa1" and n == 1:
            # no edges exist at size 1 (0/0 rule), so the auxiliary edge
            # share of the penalty cannot be collected there; charge the
            # full penalty on the vertex to match the defining formula
            aux = cfg.penalty ** cfg.p
        v[np.ix_(pair.aux_mask1, real2)] = aux
        v[np.ix_(real1, pair.aux_mask2)] = aux
        # auxiliary-to-auxiliary matches are free (GTT padding only)
        self.vertex_costs = v

    def _build_edge_codes(self):
        pair, cfg, n = self.pair, self.cfg, self.n
        metric = cfg.edge_metric
        values = [metric.no_edge_value]
        index = {self._key(metric.no_edge_value): 0}
        for g in (pair.g1, pair.g2):
            for attr in g.edge_attrs.values():
                k = self._key(attr)
                if k not in index:
                    index[k] = len(values)
                    values.append(attr)
        self.aux_code = None
        if pair.aux_edges:
            self.aux_code = len(values)
            values.append(None)  # placeholder; cost rules below never call the metric on it
        u = len(values)
        real_u = u - (1 if self.aux_code is not None else 0)

        table = np.zeros((u, u))
        if metric.kind == "zero":
            pass
        elif metric.kind == "discrete":
            table[:real_u, :real_u] = metric.cutoff ** cfg.p * (1.0 - np.eye(real_u))
        else:
            for a in range(real_u):
                for b in range(a + 1, real_u):
                    d = metric.dist(values[a], values[b]) ** cfg.p
                    table[a, b] = table[b, a] = d
        if self.aux_code is not None:
            # d(y, y_aux) = C_Y for every y, including the no-edge element
            table[self.aux_code, :] = cfg.c_y ** cfg.p
            table[:, self.aux_code] = cfg.c_y ** cfg.p
            table[self.aux_code, self.aux_code] = 0.0

        self.edge_values = values
        self.cost_table = table
        self.codes1 = self._code_matrix(pair.g1, pair.aux_mask1, index)
        self.codes2 = self._code_matrix(pair.g2, pair.aux_mask2, index)

    @staticmethod
    def _key(attr):
        try:
            hash(attr)
        except TypeError as exc:
            raise GraphFormatError(
                f"edge attributes must be hashable, got {type(attr).__name__}") from exc
        return attr

    def _code_matrix(self, g, aux_mask, index):
        n = self.n
        codes = np.zeros((n, n), dtype=np.int64)  # no-edge code is 0
        for (i, j), attr in g.edge_attrs.items():
            codes[i, j] = codes[j, i] = index[self._key(attr)]
        if self.aux_code is not None and aux_mask.any():
            aux = np.flatnonzero(aux_mask)
            codes[aux, :] = self.aux_code
            codes[:, aux] = self.aux_code
            codes[aux, aux] = 0  # diagonal stays the no-edge element
        return codes

    # -- elementary costs ---------------------------------------------

    def edge_cost_p(self, i, i2, j, j2) -> float:
        """p-th power edge distance d_Y(e[i,i2], f[j,j2])^p (unscaled)."""
        return float(self.cost_table[self.codes1[i, i2], self.codes2[j, j2]])

    def perm_edge_sum(self, perm) -> float:
        """Sum of unscaled p-th-power edge distances over ordered pairs."""
        c2 = self.codes2[np.ix_(perm, perm)]
        return float(self.cost_table[self.codes1, c2].sum())

    def objective(self, perm) -> float:
        v = float(self.vertex_costs[np.arange(self.n), perm].sum())
        return v + 0.5 * self.edge_scale * self.perm_edge_sum(perm)

    def distance_from_objective(self, objective: float) -> float:
        if self.n == 0:
            return 0.0
        if self.cfg.is_relative:
            return (objective / self.n) ** (1.0 / self.cfg.p)
        return objective ** (1.0 / self.cfg.p)

    def breakdown(self, perm) -> CostBreakdown:
        perm = np.asarray(perm, dtype=np.int64)
        chosen = self.vertex_costs[np.arange(self.n), perm]
        real_pair = ~self.pair.aux_mask1 & ~self.pair.aux_mask2[perm]
        vertex = float(chosen[real_pair].sum())
        penalty = float(chosen.sum()) - vertex
        edge = 0.5 * self.edge_scale * self.perm_edge_sum(perm)
        return CostBreakdown(vertex_cost=vertex, edge_cost=edge, penalty_cost=penalty)

    def tensor(self) -> np.ndarray:
        """Dense (n, n, n, n) array of unscaled p-th-power edge distances."""
        if self._tensor is None:
            if self.n > _TENSOR_CAP:
                raise ValueError(f"edge tensor not built for n > {_TENSOR_CAP}")
            self._tensor = self.cost_table[
                self.codes1[:, :, None, None], self.codes2[None, None, :, :]]
        return self._tensor

    # -- FAQ support ---------------------------------------------------

    def edge_weight_matrices(self):
        """Scalar weight matrices (W1, W2) with d_Y(a, b)^p = (w(a) - w(b))^2.

        Exists for the zero metric, for the discrete metric when the edge
        attributes are binary (no-edge element plus at most one value) and
        for absolute differences at order p = 2.  GOSPA1 padding introduces
        the constant-distance auxiliary edge element, which admits no such
        weights.
        """
        metric = self.cfg.edge_metric
        if self.aux_code is not None and (
                (self.codes1 == self.aux_code).any() or (self.codes2 == self.aux_code).any()):
            raise UnsupportedEdgeMetric(
                "GOSPA1 auxiliary edges have no scalar weight representation")
        real_u = len(self.edge_values) - (1 if self.aux_code is not None else 0)
        weights = np.zeros(len(self.edge_values))
        if metric.kind == "zero":
            pass
        elif metric.kind == "discrete":
            if real_u > 2:
                raise UnsupportedEdgeMetric(
                    "discrete edge metric needs binary attributes for weight form")
            weights[1:real_u] = metric.cutoff ** (self.cfg.p / 2.0)
        elif metric.kind == "absolute_difference":
            if self.cfg.p != 2:
                raise UnsupportedEdgeMetric(
                    "absolute-difference edge metric requires order p = 2 for weight form")
            weights[:real_u] = [float(v) for v in self.edge_values[:real_u]]
        else:
            raise UnsupportedEdgeMetric(f"no weight form for edge metric kind {metric.kind!r}")
        diff = (weights[:real_u, None] - weights[None, :real_u]) ** 2
        if not np.allclose(diff, self.cost_table[:real_u, :real_u], atol=1e-12):
            raise UnsupportedEdgeMetric("edge costs are not squared weight differences")
        return weights[self.codes1], weights[self.codes2]


def check_permutation(perm, n) -> np.ndarray:
    arr = np.asarray(perm, dtype=np.int64)
    if arr.shape != (n,) or not np.array_equal(np.sort(arr), np.arange(n)):
        raise NotAPermutation(f"expected a permutation of 0..{n - 1}, got {perm!r}")
    return arr


def _costs_for(pair: PaddedPair, cfg: MetricConfig) -> PairCosts:
    if cfg is pair.cfg or cfg == pair.cfg:
        return pair.costs
    return PairCosts(dataclasses.replace(pair, cfg=cfg))


def evaluate_permutation(pair: PaddedPair, cfg: MetricConfig, perm) -> MatchingResult:
    """Exact metric value of one permutation of the padded pair.

    Returns the bracketed objective of the matching form of the metric:
    for GTT ``[sum d_X^p + 1/2 sum d_Y^p]^(1/p)``, for GOSPA the same with
    edge scale 1/(n-1) and overall normalization by n (0/0 read as 0 when
    n = 1), together with the vertex / edge / auxiliary-penalty breakdown.
    """
    pc = _costs_for(pair, cfg)
    arr = check_permutation(perm, pair.n)
    objective = pc.objective(arr)
    return MatchingResult(
        permutation=tuple(int(x) for x in arr),
        distance=pc.distance_from_objective(objective),
        objective=objective,
        breakdown=pc.breakdown(arr),
        solver="evaluate",
    )


class EdgeCostAccessor:
    """4-index edge cost view: c_n * d_Y(e[i,i'], f[j,j'])^p."""

    def __init__(self, pc: PairCosts):
        self._pc = pc
        self.scale = pc.edge_scale

    def __call__(self, i, i2, j, j2) -> float:
        return self.scale * self._pc.edge_cost_p(i, i2, j, j2)

    def tensor(self) -> np.ndarray:
        return self.scale * self._pc.tensor()


def build_cost_matrices(pair: PaddedPair, cfg: MetricConfig):
    """Vertex cost matrix and scaled edge cost accessor of the padded QAP.

    The QAP objective ``1/2 sum_(i,i') edge(i,i',pi(i),pi(i')) + sum_i
    vertex[i, pi(i)]`` over the returned pieces, rooted and normalized per
    variant, reproduces :func:`evaluate_permutation` for every permutation.
    """
    pc = _costs_for(pair, cfg)
    return pc.vertex_costs.copy(), EdgeCostAccessor(pc)
