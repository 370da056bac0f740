"""Pairwise distance matrices and metric-space permutation tests.

Two tests calibrated by label permutation: a distance-based pseudo-F for
location differences between groups (computed straight from squared
distances, no coordinates needed) and a Levene-style dispersion test on
distances to group medoids.  Both statistics follow common conventions --
Anderson-style pseudo-F and squared-distance medoids as group centers --
which is recorded in the result metadata.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import MetricConfig
from .errors import AgdistError
from .metrics import DistanceRequest, distance


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("labels must be unique")
        if vals.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {vals.shape}")
        if not np.array_equal(vals, vals.T):
            raise ValueError("distance matrix must be exactly symmetric")
        if np.diag(vals).any():
            raise ValueError("diagonal must be zero")
        if (vals < 0).any():
            raise ValueError("distances must be non-negative")

    @property
    def n(self) -> int:
        return len(self.labels)

    def scaled(self, factor: float) -> "DistanceMatrix":
        return DistanceMatrix(self.labels, self.values * factor)


@dataclass(frozen=True)
class GroupedSample:
    matrix: DistanceMatrix
    groups: dict  # label -> group id

    def __post_init__(self):
        missing = [lab for lab in self.matrix.labels if lab not in self.groups]
        if missing:
            raise ValueError(f"labels without a group: {missing}")
        ids = sorted({self.groups[lab] for lab in self.matrix.labels}, key=str)
        if len(ids) < 2:
            raise ValueError("need at least two groups")
        sizes = {g: 0 for g in ids}
        for lab in self.matrix.labels:
            sizes[self.groups[lab]] += 1
        small = [g for g, s in sizes.items() if s < 2]
        if small:
            raise ValueError(f"groups of size < 2: {small}")

    def group_codes(self) -> np.ndarray:
        ids = sorted({self.groups[lab] for lab in self.matrix.labels}, key=str)
        code = {g: c for c, g in enumerate(ids)}
        return np.asarray([code[self.groups[lab]] for lab in self.matrix.labels])


def distance_matrix(graphs, cfg: MetricConfig, solver: str = "auto", labels=None,
                    n_jobs: int = 1, **request_kwargs) -> DistanceMatrix:
    """All pairwise distances, deterministically ordered, optionally threaded.

    Solver failures are re-raised with the offending pair named.
    """
    graphs = list(graphs)
    if len(graphs) < 2:
        raise ValueError("need at least two graphs")
    if labels is None:
        labels = [f"g{i}" for i in range(len(graphs))]
    labels = list(labels)
    if len(labels) != len(graphs):
        raise ValueError("labels and graphs differ in length")
    pairs = list(itertools.combinations(range(len(graphs)), 2))

    def compute(idx):
        i, j = idx
        try:
            req = DistanceRequest(graphs[i], graphs[j], cfg, solver=solver, **request_kwargs)
            return distance(req).distance
        except AgdistError as exc:
            raise type(exc)(f"pair ({labels[i]}, {labels[j]}): {exc}") from exc

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            dists = list(pool.map(compute, pairs))
    else:
        dists = [compute(pair) for pair in pairs]
    values = np.zeros((len(graphs), len(graphs)))
    for (i, j), d in zip(pairs, dists):
        values[i, j] = values[j, i] = d
    return DistanceMatrix(labels, values)


# -- statistics -------------------------------------------------------------


@dataclass(frozen=True)
class TestResult:
    method: str
    statistic: float
    p_value: float
    n_perm: int
    seed: Optional[int]
    convention: str
    degenerate: bool = False

    def csv_row(self) -> str:
        return (f"{self.statistic!r},{self.p_value!r},{self.n_perm},"
                f"{'' if self.seed is None else self.seed},{self.convention}")


def _pseudo_f(d2: np.ndarray, codes: np.ndarray, n_groups: int):
    """Distance-based pseudo-F from squared distances; None when SS_W = 0."""
    n = len(codes)
    iu = np.triu_indices(n, k=1)
    ss_t = d2[iu].sum() / n
    ss_w = 0.0
    for g in range(n_groups):
        members = np.flatnonzero(codes == g)
        if len(members) < 2:
            continue
        sub = d2[np.ix_(members, members)]
        ss_w += np.triu(sub, k=1).sum() / len(members)
    if ss_w == 0.0:
        return None
    return ((ss_t - ss_w) / (n_groups - 1)) / (ss_w / (n - n_groups))


def _levene_w(d: np.ndarray, d2: np.ndarray, codes: np.ndarray, n_groups: int):
    """Classic one-way F on distances to the group medoids; None if degenerate."""
    n = len(codes)
    z = np.zeros(n)
    for g in range(n_groups):
        members = np.flatnonzero(codes == g)
        within = d2[np.ix_(members, members)].sum(axis=1)
        medoid = members[int(np.argmin(within))]  # lowest index wins ties
        z[members] = d[members, medoid]
    grand = z.mean()
    between = 0.0
    within_ss = 0.0
    for g in range(n_groups):
        members = np.flatnonzero(codes == g)
        zg = z[members]
        between += len(members) * (zg.mean() - grand) ** 2
        within_ss += ((zg - zg.mean()) ** 2).sum()
    if within_ss == 0.0:
        return None
    return (between / (n_groups - 1)) / (within_ss / (n - n_groups))


def _distinct_assignments(codes: np.ndarray):
    """All distinct arrangements of the group-label multiset."""
    n = len(codes)
    counts = {}
    for c in codes:
        counts[int(c)] = counts.get(int(c), 0) + 1
    groups = sorted(counts)

    def rec(remaining, assigned):
        if not remaining:
            out = np.empty(n, dtype=codes.dtype)
            for g, members in assigned:
                out[list(members)] = g
            yield out
            return
        g = remaining[0]
        free = sorted(set(range(n)) - {i for _, mem in assigned for i in mem})
        if len(remaining) == 1:
            yield from rec(remaining[1:], assigned + [(g, tuple(free))])
            return
        for combo in itertools.combinations(free, counts[g]):
            yield from rec(remaining[1:], assigned + [(g, combo)])

    yield from rec(groups, [])


def _permutation_test(codes: np.ndarray, stat_fn, n_perm: int, seed,
                      method: str, convention: str, exhaustive: bool) -> TestResult:
    observed = stat_fn(codes)
    if observed is None:
        eff = (sum(1 for _ in _distinct_assignments(codes)) - 1) if exhaustive else n_perm
        return TestResult(method=method, statistic=float("inf"),
                          p_value=1.0 / (1 + eff), n_perm=eff, seed=seed,
                          convention=convention, degenerate=True)
    if exhaustive:
        count = 0
        total = 0
        skipped_observed = False
        for assign in _distinct_assignments(codes):
            if not skipped_observed and np.array_equal(assign, codes):
                skipped_observed = True
                continue
            total += 1
            stat = stat_fn(assign)
            if stat is None or stat >= observed:
                count += 1
        return TestResult(method=method, statistic=float(observed),
                          p_value=(1 + count) / (1 + total), n_perm=total, seed=seed,
                          convention=convention + "+exhaustive")
    if n_perm < 1:
        raise ValueError("n_perm must be at least 1")
    rng = np.random.default_rng(seed)
    count = 0
    for _ in range(n_perm):
        stat = stat_fn(rng.permutation(codes))
        if stat is None or stat >= observed:
            count += 1
    return TestResult(method=method, statistic=float(observed),
                      p_value=(1 + count) / (1 + n_perm), n_perm=n_perm, seed=seed,
                      convention=convention)


def permanova_test(sample: GroupedSample, n_perm: int = 999, seed: int = 0,
                   exhaustive: bool = False) -> TestResult:
    """Distance-based pseudo-F with a permutation p-value.

    ``exhaustive=True`` enumerates every distinct label assignment once
    instead of sampling shuffles (feasible for small samples); the p-value
    keeps the add-one convention and is never 0.  A degenerate within-group
    sum of squares is reported with ``degenerate=True`` and the smallest
    attainable p-value.
    """
    d2 = sample.matrix.values ** 2
    codes = sample.group_codes()
    n_groups = int(codes.max()) + 1
    return _permutation_test(
        codes, lambda c: _pseudo_f(d2, c, n_groups), n_perm, seed,
        method="permanova", convention="pseudo-F(squared-distances)",
        exhaustive=exhaustive)


def levene_test(sample: GroupedSample, n_perm: int = 999, seed: int = 0,
                exhaustive: bool = False) -> TestResult:
    """Dispersion test: one-way F on distances to group medoids, permuted."""
    d = sample.matrix.values
    d2 = d ** 2
    codes = sample.group_codes()
    n_groups = int(codes.max()) + 1
    return _permutation_test(
        codes, lambda c: _levene_w(d, d2, c, n_groups), n_perm, seed,
        method="levene", convention="medoid-dispersion-F",
        exhaustive=exhaustive)


# -- file formats ------------------------------------------------------------


def matrix_to_csv(matrix: DistanceMatrix) -> str:
    """Comma-delimited, labels in the first row and first column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(matrix.labels))
    for lab, row in zip(matrix.labels, matrix.values):
        writer.writerow([lab] + [f"{v:.17g}" for v in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> DistanceMatrix:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    labels = rows[0][1:]
    values = np.asarray([[float(x) for x in row[1:]] for row in rows[1:]])
    row_labels = [row[0] for row in rows[1:]]
    if row_labels != labels:
        raise ValueError("row labels do not match column labels")
    return DistanceMatrix(labels, values)


def groups_to_csv(groups: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "group"])
    for lab, grp in groups.items():
        writer.writerow([lab, grp])
    return buf.getvalue()


def groups_from_csv(text: str) -> dict:
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if rows and rows[0] == ["label", "group"]:
        rows = rows[1:]
    out = {}
    for row in rows:
        if len(row) != 2:
            raise ValueError(f"expected 'label,group' rows, got {row!r}")
        out[row[0]] = row[1]
    return out


def results_to_csv(results) -> str:
    lines = ["statistic,p_value,n_perm,seed,convention"]
    lines += [r.csv_row() for r in results]
    return "\n".join(lines) + "\n"
