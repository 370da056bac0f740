import dataclasses

import pytest

from agdist import DistanceRequest, distance
from agdist.simgen import (AUCTION_PRESET_SMALL, CouplingSpec, ScenarioSpec, Setting,
                           auction_preset_large, binomial_uniform_points,
                           coupling_bound_check, experiment_csv, gen_scenario1,
                           gen_scenario2, large_grid, run_experiment, simulation_config,
                           small_grid)


def test_sizes_and_determinism():
    spec = ScenarioSpec("independent", m=4, n=8, p=0.3, q=0.4, seed=99)
    g1, g2 = gen_scenario1(spec)
    assert g1.n == 4 and g2.n == 8
    h1, h2 = gen_scenario1(spec)
    assert g1.vertex_attrs == h1.vertex_attrs and g1.edge_attrs == h1.edge_attrs
    assert g2.vertex_attrs == h2.vertex_attrs and g2.edge_attrs == h2.edge_attrs
    other = gen_scenario1(dataclasses.replace(spec, seed=100))[0]
    assert other.vertex_attrs != g1.vertex_attrs


def test_edge_probability_extremes():
    empty = gen_scenario1(ScenarioSpec("independent", m=5, n=3, p=0.0, q=0.0, seed=1))[0]
    assert empty.num_edges == 0
    full = gen_scenario1(ScenarioSpec("independent", m=5, n=3, p=1.0, q=1.0, seed=1))[0]
    assert full.num_edges == 10


def test_perturbed_identical_when_no_noise():
    spec = ScenarioSpec("perturbed", m=6, n=6, p=0.4, sigma2=0.0, r=0.0, seed=5)
    g1, g2 = gen_scenario2(spec)
    assert g1.vertex_attrs == g2.vertex_attrs
    assert g1.edge_attrs == g2.edge_attrs
    cfg = simulation_config(0.4)
    assert distance(DistanceRequest(g1, g2, cfg, solver="exact")).distance == 0.0


def test_perturbed_full_flip_complements_edges():
    spec = ScenarioSpec("perturbed", m=5, n=5, p=0.5, sigma2=0.0, r=1.0, seed=6)
    g1, g2 = gen_scenario2(spec)
    assert g1.num_edges + g2.num_edges == 10
    for i in range(5):
        for j in range(i + 1, 5):
            assert (g1.edge(i, j) is None) != (g2.edge(i, j) is None)


def test_perturbed_same_first_graph_regardless_of_noise_params():
    base = ScenarioSpec("perturbed", m=30, n=30, p=4 / 30, sigma2=1 / 900, r=0.3, seed=7)
    g1a, _ = gen_scenario2(base)
    g1b, _ = gen_scenario2(dataclasses.replace(base, sigma2=0.5, r=0.9))
    assert g1a.vertex_attrs == g1b.vertex_attrs and g1a.edge_attrs == g1b.edge_attrs


def test_spec_validation():
    with pytest.raises(ValueError):
        ScenarioSpec("perturbed", m=3, n=4, p=0.5)
    with pytest.raises(ValueError):
        ScenarioSpec("independent", m=3, n=4, p=1.5)
    with pytest.raises(ValueError):
        ScenarioSpec("weird", m=3, n=4, p=0.5)


def test_edge_count_concentration():
    total = 0
    for s in range(200):
        spec = ScenarioSpec("independent", m=100, n=1, p=0.3, q=0.0, seed=1000 + s)
        total += gen_scenario1(spec)[0].num_edges
    mean = total / 200
    expect = 0.3 * 100 * 99 / 2
    assert abs(mean - expect) / expect < 0.05


def test_run_experiment_identical_pairs_zero_deviation():
    spec = ScenarioSpec("perturbed", m=5, n=5, p=0.4, sigma2=0.0, r=0.0, seed=11)
    setting = Setting(spec=spec, cfg=simulation_config(0.4),
                      solvers=("exact", "auction", "faq"))
    rows = run_experiment([setting], samples=4)
    assert rows[0].reference == "exact"
    for dev in rows[0].deviations.values():
        assert (dev == 0.0).all()


def test_run_experiment_deviations_nonnegative_and_csv_shape():
    settings = small_grid(sizes=((4, 4), (4, 8)), k_values=(0.4,))
    rows = run_experiment(settings, samples=3)
    for row in rows:
        for dev in row.deviations.values():
            assert (dev >= -1e-12).all()
    text = experiment_csv(rows)
    lines = text.strip().split("\n")
    assert len(lines) == 3
    header = lines[0].split(";")
    assert header[:2] == ["(m,n)", "K"]
    assert "auction dev mean" in header and "faq dev (q05, q95)" in header
    assert "auction time mean" not in header  # times are opt-in
    assert lines[1].split(";")[0] == "(4,4)"
    timed = experiment_csv(rows, include_times=True)
    assert "exact time mean" in timed.split("\n")[0]


def test_grids_have_documented_shape():
    small = small_grid()
    assert len(small) == 18  # six size pairs, three K values
    assert small[0].auction_params == AUCTION_PRESET_SMALL
    large1 = large_grid(scenario=1)
    assert len(large1) == 6
    assert {s.spec.m for s in large1} == {20, 50, 100}
    assert large1[0].reference == "auction"
    large2 = large_grid(scenario=2)
    assert {s.spec.m for s in large2} == {30, 50, 100}
    assert large2[0].spec.r == 0.3
    # size-scaled bid increments
    assert auction_preset_large(0.4, 20, 1).epsilon == pytest.approx(4 * 0.4 * 20 / 10000)
    assert auction_preset_large(0.4, 30, 2).epsilon == pytest.approx(2 * 0.4 * 30 / 10000)
    assert auction_preset_large(0.4, 30, 2).stop_at == 15
    assert auction_preset_large(0.4, 30, 2).maxiter == 10000


def test_coupling_equal_parameters_gives_zero():
    spec = CouplingSpec(q_n=0.5, q=0.5, point_model=binomial_uniform_points(4),
                        sample_count=100, seed=3)
    check = coupling_bound_check(spec)
    assert check.lhs == 0.0
    assert check.passed


def test_coupling_bound_holds_smoke():
    spec = CouplingSpec(q_n=0.3, q=0.5, point_model=binomial_uniform_points(4),
                        sample_count=400, seed=4)
    check = coupling_bound_check(spec)
    # identical points: the bound reduces to the edge term C_Y^p |q_n - q| / 2
    assert check.rhs == pytest.approx(1.0 * 0.2 / 2, abs=1e-12)
    assert check.passed


def test_coupling_requires_enough_samples():
    with pytest.raises(ValueError):
        coupling_bound_check(CouplingSpec(q_n=0.1, q=0.2, sample_count=10))
