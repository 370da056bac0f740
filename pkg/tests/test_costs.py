import itertools

import numpy as np
import pytest
from conftest import make_config, one_vs_two_pair, random_graph

from agdist import (GOSPA1, GOSPA2, GTT, AttributedGraph, NotAPermutation,
                    build_cost_matrices, evaluate_permutation, pad)


def test_identity_on_identical_graphs():
    rng = np.random.default_rng(0)
    g = random_graph(rng, 4)
    for variant in (GTT, GOSPA1, GOSPA2):
        cfg = make_config(variant)
        pair = pad(g, g, cfg)
        perm = list(range(pair.n))  # identity matches reals to reals, aux to aux
        res = evaluate_permutation(pair, cfg, perm)
        assert res.distance == 0.0
        assert res.breakdown.vertex_cost == 0.0
        assert res.breakdown.penalty_cost == 0.0


def test_one_vs_two_gospa2_both_permutations():
    g1, g2 = one_vs_two_pair()
    cfg = make_config(GOSPA2, penalty=2.0)
    pair = pad(g1, g2, cfg)
    vals = sorted(evaluate_permutation(pair, cfg, perm).distance
                  for perm in ([0, 1], [1, 0]))
    assert vals[0] == pytest.approx(1.5)          # C2/2 + (1/2)(1/2)(2K)
    assert vals[1] == pytest.approx(2.0)          # mismatch: (1 + C2 + 1)/2


def test_one_vs_two_gtt_best_of_six():
    g1, g2 = one_vs_two_pair()
    cfg = make_config(GTT, penalty=2.0)
    pair = pad(g1, g2, cfg)
    best = min(evaluate_permutation(pair, cfg, perm).distance
               for perm in itertools.permutations(range(3)))
    assert best == pytest.approx(3.0)


def test_gospa_single_vertex_edge_scale_is_zero():
    g = AttributedGraph([(0.3, 0.3)])
    cfg = make_config(GOSPA2, penalty=2.0)
    pair = pad(g, g, cfg)
    _, edge_costs = build_cost_matrices(pair, cfg)
    assert edge_costs.scale == 0.0
    assert edge_costs(0, 0, 0, 0) == 0.0


def test_vertex_cost_matrix_values():
    g1, g2 = one_vs_two_pair()
    cfg = make_config(GOSPA2, penalty=2.0)
    vertex_costs, _ = build_cost_matrices(pad(g1, g2, cfg), cfg)
    # real row: distance 0 to (0,0), cutoff-1 distance to (1,0); aux row costs C2
    assert vertex_costs.tolist() == [[0.0, 1.0], [2.0, 2.0]]
    cfg_gtt = make_config(GTT, penalty=2.0)
    vertex_costs, _ = build_cost_matrices(pad(g1, g2, cfg_gtt), cfg_gtt)
    assert vertex_costs[0].tolist() == [0.0, 1.0, 2.0]


def test_qap_objective_matches_evaluation():
    rng = np.random.default_rng(7)
    for variant in (GTT, GOSPA1, GOSPA2):
        cfg = make_config(variant, k=0.6)
        g1 = random_graph(rng, int(rng.integers(1, 5)))
        g2 = random_graph(rng, int(rng.integers(1, 6)))
        pair = pad(g1, g2, cfg)
        vertex_costs, edge_costs = build_cost_matrices(pair, cfg)
        n = pair.n
        for _ in range(20):
            perm = rng.permutation(n)
            qap = sum(vertex_costs[i, perm[i]] for i in range(n))
            qap += 0.5 * sum(edge_costs(i, i2, perm[i], perm[i2])
                             for i in range(n) for i2 in range(n))
            res = evaluate_permutation(pair, cfg, perm)
            assert qap == pytest.approx(res.objective, abs=1e-12)
            scaled = (qap / n) ** (1 / cfg.p) if cfg.is_relative else qap ** (1 / cfg.p)
            assert scaled == pytest.approx(res.distance, abs=1e-12)


def test_edge_accessor_symmetry():
    rng = np.random.default_rng(8)
    cfg = make_config(GOSPA1, k=0.5)
    g1, g2 = random_graph(rng, 3), random_graph(rng, 5)
    _, edge_costs = build_cost_matrices(pad(g1, g2, cfg), cfg)
    for i, i2, j, j2 in itertools.product(range(5), repeat=4):
        assert edge_costs(i, i2, j, j2) == edge_costs(i2, i, j2, j)


def test_relabeling_invariance():
    rng = np.random.default_rng(9)
    g1, g2 = random_graph(rng, 4), random_graph(rng, 4)
    for variant in (GTT, GOSPA1, GOSPA2):
        cfg = make_config(variant)
        pair = pad(g1, g2, cfg)
        sigma = [int(x) for x in rng.permutation(4)]
        pair_h = pad(g1.relabeled(sigma), g2, cfg)
        # row i of the original is row sigma(i) of the relabeled pair; aux rows keep place
        full_sigma = sigma + list(range(4, pair.n))
        for _ in range(10):
            perm = rng.permutation(pair.n)
            moved = np.empty_like(perm)
            for i in range(pair.n):
                moved[full_sigma[i]] = perm[i]
            a = evaluate_permutation(pair, cfg, perm).distance
            b = evaluate_permutation(pair_h, cfg, moved).distance
            assert a == pytest.approx(b, abs=1e-12)


def test_not_a_permutation():
    g1, g2 = one_vs_two_pair()
    cfg = make_config(GOSPA2, penalty=2.0)
    pair = pad(g1, g2, cfg)
    with pytest.raises(NotAPermutation):
        evaluate_permutation(pair, cfg, [0, 0])
    with pytest.raises(NotAPermutation):
        evaluate_permutation(pair, cfg, [0])


def test_empty_pair_evaluates_to_zero():
    from agdist import empty_graph
    cfg = make_config(GTT, penalty=1.0)
    pair = pad(empty_graph(), empty_graph(), cfg)
    res = evaluate_permutation(pair, cfg, [])
    assert res.distance == 0.0 and res.objective == 0.0
