"""Shared builders for the test suite."""

from agdist import (GOSPA1, GOSPA2, GTT, AttributedGraph, MetricConfig, discrete,
                    euclidean_cutoff)


def random_graph(rng, n, edge_prob=0.4, dim=2, k_attr=None):
    """Uniform positions on the unit square, Bernoulli 0/1 edges."""
    pts = rng.random((n, dim))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                edges[(i, j)] = 1
    return AttributedGraph([tuple(p) for p in pts], edges)


def make_config(variant, k=1.0, p=1.0, penalty=None):
    """Cutoff-K vertex metric, discrete-K edges, minimal legal penalty by default."""
    if penalty is None:
        share = 0.5 if variant == GOSPA1 else 1.0
        penalty = (k ** p + share * k ** p) ** (1.0 / p)
    return MetricConfig(variant=variant, p=p, penalty=penalty,
                        vertex_metric=euclidean_cutoff(k), edge_metric=discrete(k))


def one_vs_two_pair():
    """The worked 1-vertex vs 2-vertex example used across the suite."""
    g1 = AttributedGraph([(0.0, 0.0)])
    g2 = AttributedGraph([(0.0, 0.0), (1.0, 0.0)], {(0, 1): 1})
    return g1, g2


ALL_VARIANTS = (GTT, GOSPA1, GOSPA2)
