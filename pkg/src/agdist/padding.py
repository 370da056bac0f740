"""Padding constructions that turn the metrics into balanced matching problems.

GTT: both graphs grow to size m + n with isolated auxiliary vertices whose
matching cost against any real vertex is C^p.  GOSPA: only the smaller graph
grows, to size max{m, n}; GOSPA1 auxiliary vertices connect to every other
vertex through an auxiliary edge element at constant distance C_Y, GOSPA2
auxiliary vertices stay isolated.  Auxiliary elements are never members of
the attribute spaces -- they are index masks plus cost rules applied by the
evaluation layer, so user-supplied metrics never see them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import GTT, MetricConfig
from .errors import EmptyPair
from .graphs import AttributedGraph


@dataclass(frozen=True)
class PaddedPair:
    """Two graphs brought to common size ``n`` plus auxiliary-vertex masks.

    ``aux_edges`` tells whether auxiliary vertices carry the constant-cost
    auxiliary edge element (GOSPA1) instead of plain non-edges.
    """

    g1: AttributedGraph
    g2: AttributedGraph
    cfg: MetricConfig
    n: int
    aux_mask1: np.ndarray
    aux_mask2: np.ndarray
    aux_edges: bool = False

    @cached_property
    def costs(self):
        """Evaluation machinery with the extended-metric cost rules."""
        from .costs import PairCosts

        return PairCosts(self)


def _masks(real1: int, real2: int, n: int):
    m1 = np.zeros(n, dtype=bool)
    m1[real1:] = True
    m2 = np.zeros(n, dtype=bool)
    m2[real2:] = True
    return m1, m2


def pad_gtt(g1: AttributedGraph, g2: AttributedGraph, cfg: MetricConfig) -> PaddedPair:
    """Enlarge both graphs to size m + n with isolated auxiliary vertices."""
    n = g1.n + g2.n
    m1, m2 = _masks(g1.n, g2.n, n)
    return PaddedPair(g1=g1, g2=g2, cfg=cfg, n=n, aux_mask1=m1, aux_mask2=m2)


def pad_gospa(g1: AttributedGraph, g2: AttributedGraph, cfg: MetricConfig) -> PaddedPair:
    """Enlarge the smaller graph to size max{m, n}.

    Raises :class:`EmptyPair` when both graphs are empty (the distance is
    defined as 0 upstream; there is nothing to pad).
    """
    n = max(g1.n, g2.n)
    if n == 0:
        raise EmptyPair("cannot pad a pair of empty graphs")
    m1, m2 = _masks(g1.n, g2.n, n)
    return PaddedPair(g1=g1, g2=g2, cfg=cfg, n=n, aux_mask1=m1, aux_mask2=m2,
                      aux_edges=(cfg.variant == "gospa1"))


def pad(g1: AttributedGraph, g2: AttributedGraph, cfg: MetricConfig) -> PaddedPair:
    """Dispatch to the padding construction of ``cfg.variant``."""
    if cfg.variant == GTT:
        return pad_gtt(g1, g2, cfg)
    return pad_gospa(g1, g2, cfg)
