import itertools

import numpy as np
import pytest
from conftest import make_config, random_graph

from agdist import GOSPA2
from agdist.stats import (DistanceMatrix, GroupedSample, distance_matrix,
                          groups_from_csv, groups_to_csv, levene_test, matrix_from_csv,
                          matrix_to_csv, permanova_test, results_to_csv)


def _grouped(values, groups):
    labels = tuple(sorted(groups))
    return GroupedSample(DistanceMatrix(labels, values), groups)


def _separated_sample():
    # two tight clusters: zero within, one between
    labels = ["a1", "a2", "a3", "b1", "b2", "b3"]
    values = np.ones((6, 6)) - np.eye(6)
    values[:3, :3] = 0.0
    values[3:, 3:] = 0.0
    np.fill_diagonal(values, 0.0)
    groups = {lab: lab[0] for lab in labels}
    return GroupedSample(DistanceMatrix(labels, values), groups)


def test_matrix_validation():
    with pytest.raises(ValueError):
        DistanceMatrix(("a", "b"), np.array([[0.0, 1.0], [2.0, 0.0]]))  # asymmetric
    with pytest.raises(ValueError):
        DistanceMatrix(("a", "b"), np.array([[0.5, 1.0], [1.0, 0.0]]))  # diagonal
    with pytest.raises(ValueError):
        DistanceMatrix(("a", "a"), np.zeros((2, 2)))  # duplicate labels
    with pytest.raises(ValueError):
        DistanceMatrix(("a", "b"), -np.ones((2, 2)) + np.eye(2))


def test_grouped_sample_validation():
    mat = DistanceMatrix(("a", "b", "c", "d"), np.zeros((4, 4)))
    with pytest.raises(ValueError):
        GroupedSample(mat, {"a": 0, "b": 0, "c": 0})  # missing label
    with pytest.raises(ValueError):
        GroupedSample(mat, {"a": 0, "b": 0, "c": 0, "d": 0})  # one group
    with pytest.raises(ValueError):
        GroupedSample(mat, {"a": 0, "b": 0, "c": 0, "d": 1})  # size-1 group


def test_distance_matrix_identical_graphs():
    rng = np.random.default_rng(40)
    g = random_graph(rng, 3)
    mat = distance_matrix([g, g, g], make_config(GOSPA2), solver="exact")
    assert mat.values.tolist() == np.zeros((3, 3)).tolist()


def test_distance_matrix_two_graphs_and_triangle():
    rng = np.random.default_rng(41)
    graphs = [random_graph(rng, int(rng.integers(2, 5))) for _ in range(5)]
    cfg = make_config(GOSPA2, k=0.5)
    mat = distance_matrix(graphs, cfg, solver="exact")
    assert np.array_equal(mat.values, mat.values.T)
    for i, j, k in itertools.permutations(range(5), 3):
        assert mat.values[i, j] <= mat.values[i, k] + mat.values[k, j] + 1e-9


def test_distance_matrix_threads_match_serial():
    rng = np.random.default_rng(42)
    graphs = [random_graph(rng, 3) for _ in range(4)]
    cfg = make_config(GOSPA2)
    serial = distance_matrix(graphs, cfg, solver="exact")
    threaded = distance_matrix(graphs, cfg, solver="exact", n_jobs=4)
    assert np.array_equal(serial.values, threaded.values)


def test_permanova_uniform_distances_give_p_one():
    # every assignment produces the same statistic
    labels = list("abcdef")
    values = np.ones((6, 6)) - np.eye(6)
    sample = GroupedSample(DistanceMatrix(labels, values),
                           {lab: int(i >= 3) for i, lab in enumerate(labels)})
    res = permanova_test(sample, exhaustive=True)
    assert res.p_value == 1.0
    assert res.n_perm == 19


def test_permanova_separated_groups_smallest_p():
    res = permanova_test(_separated_sample(), exhaustive=True)
    assert res.degenerate  # within-group distances are all zero
    assert res.p_value == pytest.approx(1 / 20)


def test_permanova_matches_brute_force_enumeration():
    rng = np.random.default_rng(43)
    pts = rng.random((6, 2))
    values = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    labels = list("abcdef")
    groups = {lab: int(i >= 3) for i, lab in enumerate(labels)}
    sample = GroupedSample(DistanceMatrix(labels, values), groups)
    res = permanova_test(sample, exhaustive=True)

    def brute_f(codes):
        n, g = 6, 2
        d2 = values ** 2
        ss_t = sum(d2[i, j] for i in range(n) for j in range(i + 1, n)) / n
        ss_w = 0.0
        for grp in range(g):
            mem = [i for i in range(n) if codes[i] == grp]
            ss_w += sum(d2[i, j] for i in mem for j in mem if i < j) / len(mem)
        return ((ss_t - ss_w) / (g - 1)) / (ss_w / (n - g))

    observed = brute_f([0, 0, 0, 1, 1, 1])
    count = 0
    total = 0
    for combo in itertools.combinations(range(6), 3):
        codes = [0 if i in combo else 1 for i in range(6)]
        if codes == [0, 0, 0, 1, 1, 1]:
            continue
        total += 1
        if brute_f(codes) >= observed:
            count += 1
    assert res.statistic == pytest.approx(observed, abs=1e-12)
    assert res.p_value == (1 + count) / (1 + total)


def test_levene_identical_dispersion_large_p():
    # the two groups are congruent, so dispersions match exactly
    block = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.5], [2.0, 1.5, 0.0]])
    values = np.zeros((6, 6))
    values[:3, :3] = block
    values[3:, 3:] = block
    values[:3, 3:] = 5.0
    values[3:, :3] = 5.0
    labels = list("abcdef")
    sample = GroupedSample(DistanceMatrix(labels, values),
                           {lab: int(i >= 3) for i, lab in enumerate(labels)})
    res = levene_test(sample, exhaustive=True)
    assert res.p_value > 0.5


def test_levene_spread_vs_tight_small_p():
    values = np.zeros((6, 6))
    values[:3, :3] = 0.0                      # tight group
    spread = np.array([[0.0, 4.0, 8.0], [4.0, 0.0, 6.0], [8.0, 6.0, 0.0]])
    values[3:, 3:] = spread
    values[:3, 3:] = 10.0
    values[3:, :3] = 10.0
    labels = list("abcdef")
    sample = GroupedSample(DistanceMatrix(labels, values),
                           {lab: int(i >= 3) for i, lab in enumerate(labels)})
    res = levene_test(sample, exhaustive=True)
    assert res.p_value <= 0.2


def test_levene_all_identical_degenerate():
    labels = list("abcd")
    sample = GroupedSample(DistanceMatrix(labels, np.zeros((4, 4))),
                           {lab: int(i >= 2) for i, lab in enumerate(labels)})
    res = levene_test(sample, n_perm=99)
    assert res.degenerate
    assert res.p_value == pytest.approx(1 / 100)


def test_p_values_never_zero_and_seeded():
    rng = np.random.default_rng(44)
    values = rng.random((6, 6))
    values = np.triu(values, 1)
    values = values + values.T
    labels = list("abcdef")
    sample = GroupedSample(DistanceMatrix(labels, values),
                           {lab: int(i >= 3) for i, lab in enumerate(labels)})
    a = permanova_test(sample, n_perm=199, seed=7)
    b = permanova_test(sample, n_perm=199, seed=7)
    c = permanova_test(sample, n_perm=199, seed=8)
    assert 0 < a.p_value <= 1
    assert a.p_value == b.p_value
    assert a.statistic == c.statistic


def test_scale_invariance_of_p_values():
    rng = np.random.default_rng(45)
    values = np.triu(rng.random((6, 6)), 1)
    values = values + values.T
    labels = list("abcdef")
    groups = {lab: int(i >= 3) for i, lab in enumerate(labels)}
    sample = GroupedSample(DistanceMatrix(labels, values), groups)
    scaled = GroupedSample(DistanceMatrix(labels, values * 7.3), groups)
    for test in (permanova_test, levene_test):
        assert test(sample, exhaustive=True).p_value == test(scaled, exhaustive=True).p_value
        assert (test(sample, n_perm=99, seed=1).p_value
                == test(scaled, n_perm=99, seed=1).p_value)


def test_rejection_rate_calibrated_under_null():
    # needs a sample large enough that the permutation null is not too
    # discrete (at N = 6 only 10 distinct partitions exist and p <= 0.05 is
    # unreachable); N = 12 with 6 + 6 groups has 462
    rng = np.random.default_rng(46)
    rejections = 0
    labels = [f"s{i}" for i in range(12)]
    groups = {lab: int(i >= 6) for i, lab in enumerate(labels)}
    for rep in range(200):
        pts = rng.random((12, 2))
        values = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
        sample = GroupedSample(DistanceMatrix(labels, values), groups)
        if permanova_test(sample, n_perm=199, seed=rep).p_value <= 0.05:
            rejections += 1
    assert 0.01 <= rejections / 200 <= 0.10


def test_csv_roundtrips(tmp_path):
    rng = np.random.default_rng(47)
    values = np.triu(rng.random((4, 4)), 1)
    values = values + values.T
    mat = DistanceMatrix(("w", "x", "y", "z"), values)
    back = matrix_from_csv(matrix_to_csv(mat))
    assert back.labels == mat.labels
    assert np.array_equal(back.values, mat.values)
    groups = {"w": "g1", "x": "g1", "y": "g2", "z": "g2"}
    assert groups_from_csv(groups_to_csv(groups)) == groups
    sample = GroupedSample(mat, groups)
    text = results_to_csv([permanova_test(sample, n_perm=49, seed=0),
                           levene_test(sample, n_perm=49, seed=0)])
    lines = text.strip().split("\n")
    assert lines[0] == "statistic,p_value,n_perm,seed,convention"
    assert len(lines) == 3
