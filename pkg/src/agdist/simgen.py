"""Random graph scenarios, the evaluation harness and the coupling check.

Two scenarios over uniform vertex positions on the unit square with
unattributed (0/1) edges: independent pairs with separate edge
probabilities, and perturbed pairs where the second graph is the first with
bivariate normal jitter on the positions and independent edge flips.
Randomness comes from the counter-based Philox generator with one named
stream per purpose (vertex positions, edge indicators, jitter, flips), so
the "same first graph" of the perturbed scenario is reproducible regardless
of draw order and identical seeds produce bitwise-identical graphs.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .auction import AuctionParams, solve_auction
from .config import GOSPA1, GOSPA2, MetricConfig
from .attrmetrics import discrete, euclidean_cutoff
from .exact import solve_exact
from .faq import FaqParams, solve_faq
from .graphs import AttributedGraph
from .lap import solve_lap
from .padding import pad

_STREAMS = {"vertices1": 0, "edges1": 1, "vertices2": 2, "edges2": 3,
            "jitter": 4, "flips": 5, "points": 6, "edge_coupling": 7}


def _stream(seed, name: str) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(_STREAMS[name],))
    return np.random.Generator(np.random.Philox(ss))


def _child_seed(seed: int, index: int) -> int:
    """Stable 64-bit per-sample seed derived from a base seed."""
    return int(np.random.SeedSequence(entropy=(seed, index)).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ScenarioSpec:
    scenario: str            # "independent" | "perturbed"
    m: int
    n: int
    p: float                 # edge probability of the first graph
    q: float = 0.0           # edge probability of the second (independent only)
    sigma2: float = 0.0      # per-coordinate jitter variance (perturbed only)
    r: float = 0.0           # edge flip probability (perturbed only)
    seed: int = 0

    def __post_init__(self):
        if self.scenario not in ("independent", "perturbed"):
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.m < 0 or self.n < 0:
            raise ValueError("sizes must be non-negative")
        for name in ("p", "q", "r"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {val}")
        if self.scenario == "perturbed" and self.m != self.n:
            raise ValueError("perturbed scenario requires m = n")


def _pairs(n: int) -> np.ndarray:
    return np.array([(i, j) for i in range(n) for j in range(i + 1, n)], dtype=np.int64)


def _er_graph(points: np.ndarray, edge_draws: np.ndarray, prob: float) -> AttributedGraph:
    pairs = _pairs(len(points))
    edges = {}
    for k in np.flatnonzero(edge_draws < prob):
        i, j = pairs[k]
        edges[(int(i), int(j))] = 1
    return AttributedGraph([tuple(pt) for pt in points], edges)


def gen_scenario1(spec: ScenarioSpec):
    """Two independent uniform-position graphs with edge probabilities p and q."""
    if spec.scenario != "independent":
        raise ValueError("gen_scenario1 requires scenario='independent'")
    pts1 = _stream(spec.seed, "vertices1").random((spec.m, 2))
    pts2 = _stream(spec.seed, "vertices2").random((spec.n, 2))
    draws1 = _stream(spec.seed, "edges1").random(spec.m * (spec.m - 1) // 2)
    draws2 = _stream(spec.seed, "edges2").random(spec.n * (spec.n - 1) // 2)
    return _er_graph(pts1, draws1, spec.p), _er_graph(pts2, draws2, spec.q)


def gen_scenario2(spec: ScenarioSpec):
    """A graph and its perturbation: jittered positions, flipped (non-)edges."""
    if spec.scenario != "perturbed":
        raise ValueError("gen_scenario2 requires scenario='perturbed'")
    m = spec.m
    pts1 = _stream(spec.seed, "vertices1").random((m, 2))
    draws1 = _stream(spec.seed, "edges1").random(m * (m - 1) // 2)
    g1 = _er_graph(pts1, draws1, spec.p)
    jitter = _stream(spec.seed, "jitter").normal(0.0, np.sqrt(spec.sigma2), (m, 2))
    pts2 = pts1 + jitter
    flips = _stream(spec.seed, "flips").random(m * (m - 1) // 2) < spec.r
    present = draws1 < spec.p
    pairs = _pairs(m)
    edges2 = {}
    for k in np.flatnonzero(present ^ flips):
        i, j = pairs[k]
        edges2[(int(i), int(j))] = 1
    return g1, AttributedGraph([tuple(pt) for pt in pts2], edges2)


def generate(spec: ScenarioSpec):
    return gen_scenario1(spec) if spec.scenario == "independent" else gen_scenario2(spec)


def simulation_config(k: float, p: float = 1.0, variant: str = GOSPA2) -> MetricConfig:
    """Cutoff-K vertex metric, discrete-K edge metric, minimal GOSPA penalty."""
    share = 0.5 if variant == GOSPA1 else 1.0
    penalty = (k ** p + share * k ** p) ** (1.0 / p)
    return MetricConfig(variant=variant, p=p, penalty=penalty,
                        vertex_metric=euclidean_cutoff(k), edge_metric=discrete(k))


# -- experiment harness -----------------------------------------------------

AUCTION_PRESET_SMALL = AuctionParams(epsilon=0.01, stop_at=3, maxiter=100)


def auction_preset_large(k: float, size: int, scenario: int) -> AuctionParams:
    """Size-scaled bid increments used for the large-graph grids."""
    eps = 4 * k * size / 10000 if scenario == 1 else 2 * k * size / 10000
    return AuctionParams(epsilon=eps, stop_at=15, maxiter=10000)


@dataclass(frozen=True)
class Setting:
    spec: ScenarioSpec
    cfg: MetricConfig
    solvers: tuple                      # subset of ("exact", "auction", "faq")
    auction_params: AuctionParams = AUCTION_PRESET_SMALL
    faq_params: FaqParams = field(default_factory=FaqParams)
    exact_limit: int = 24

    @property
    def reference(self) -> str:
        return "exact" if "exact" in self.solvers else "auction"


@dataclass
class SettingResult:
    label: str                          # "(m,n)"
    k: Optional[float]
    reference: str
    deviations: dict                    # solver -> np.ndarray of relative deviations
    times: dict                         # solver -> np.ndarray of wall times
    distances: dict                     # solver -> np.ndarray of distances


def _solve_with(name, pair, setting):
    if name == "exact":
        return solve_exact(pair, limit=setting.exact_limit)
    if name == "auction":
        return solve_auction(pair, params=setting.auction_params)
    return solve_faq(pair, params=setting.faq_params)


def run_experiment(settings, samples: int) -> list:
    """Per setting: relative deviations from the reference solver and wall times.

    The reference is the exact solver when requested, the auction otherwise
    (the convention used for the large-graph comparisons).  Deviations are
    (heuristic - reference) / reference with 0/0 read as 0.
    """
    results = []
    for setting in settings:
        solver_names = list(setting.solvers)
        ref = setting.reference
        dists = {s: np.zeros(samples) for s in solver_names}
        times = {s: np.zeros(samples) for s in solver_names}
        for s in range(samples):
            spec = replace(setting.spec, seed=_child_seed(setting.spec.seed, s))
            g1, g2 = generate(spec)
            pair = pad(g1, g2, setting.cfg)
            for name in solver_names:
                t0 = time.perf_counter()
                res = _solve_with(name, pair, setting)
                times[name][s] = time.perf_counter() - t0
                dists[name][s] = res.distance
        deviations = {}
        for name in solver_names:
            if name == ref:
                continue
            h, r = dists[name], dists[ref]
            with np.errstate(divide="ignore", invalid="ignore"):
                dev = np.where(h == r, 0.0, (h - r) / r)
            deviations[name] = dev
        k = setting.cfg.vertex_metric.cutoff
        results.append(SettingResult(
            label=f"({setting.spec.m},{setting.spec.n})", k=k, reference=ref,
            deviations=deviations, times=times, distances=dists))
    return results


def _fmt_stats(values: np.ndarray):
    q05, q95 = np.quantile(values, [0.05, 0.95])
    return f"{values.mean():.4f}", f"({q05:.4f}, {q95:.4f})"


def experiment_csv(results: list, include_times: bool = False) -> str:
    """Semicolon-delimited table: one row per setting, mean and (q05, q95)
    of the relative deviations per heuristic and, on request, of the wall
    times per solver.  Without times the output is fully deterministic for
    a given seed."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=";", lineterminator="\n")
    dev_solvers = sorted({s for r in results for s in r.deviations})
    time_solvers = sorted({s for r in results for s in r.times}) if include_times else []
    header = ["(m,n)", "K"]
    for s in dev_solvers:
        header += [f"{s} dev mean", f"{s} dev (q05, q95)"]
    for s in time_solvers:
        header += [f"{s} time mean", f"{s} time (q05, q95)"]
    writer.writerow(header)
    for r in results:
        row = [r.label, "" if r.k is None else f"{r.k:g}"]
        for s in dev_solvers:
            row += list(_fmt_stats(r.deviations[s])) if s in r.deviations else ["", ""]
        for s in time_solvers:
            row += list(_fmt_stats(r.times[s])) if s in r.times else ["", ""]
        writer.writerow(row)
    return buf.getvalue()


SIZES_SMALL = ((4, 4), (4, 8), (4, 11), (8, 8), (8, 11), (11, 11))
SIZES_LARGE_S1 = (20, 50, 100)
SIZES_LARGE_S2 = (30, 50, 100)


def small_grid(scenario: int = 1, sizes=SIZES_SMALL, k_values=(0.1, 0.4, 0.8),
               seed: int = 20240) -> list:
    """Desk-scale grid with exact reference (small-graph study)."""
    settings = []
    for m, n in sizes:
        for k in k_values:
            if scenario == 1:
                spec = ScenarioSpec("independent", m=m, n=n, p=0.3, q=0.4, seed=seed)
            else:
                spec = ScenarioSpec("perturbed", m=m, n=n, p=0.3, r=0.1,
                                    sigma2=0.01, seed=seed)
            settings.append(Setting(spec=spec, cfg=simulation_config(k),
                                    solvers=("exact", "auction", "faq"),
                                    auction_params=AUCTION_PRESET_SMALL))
    return settings


def large_grid(scenario: int = 1, k_values=(0.1, 0.4), seed: int = 20241) -> list:
    """Large-graph grid; auction is the reference, no exact solves."""
    settings = []
    sizes = SIZES_LARGE_S1 if scenario == 1 else SIZES_LARGE_S2
    for m in sizes:
        for k in k_values:
            if scenario == 1:
                spec = ScenarioSpec("independent", m=m, n=m, p=3 / m, q=4 / m, seed=seed)
            else:
                spec = ScenarioSpec("perturbed", m=m, n=m, p=4 / m, r=0.3,
                                    sigma2=1.0 / m ** 2, seed=seed)
            settings.append(Setting(
                spec=spec, cfg=simulation_config(k), solvers=("auction", "faq"),
                auction_params=auction_preset_large(k, m, scenario)))
    return settings


# -- coupling bound check ---------------------------------------------------


def binomial_uniform_points(count: int, dim: int = 2) -> Callable:
    """Point model: ``count`` i.i.d. uniform points on the unit cube."""

    def model(rng: np.random.Generator) -> np.ndarray:
        return rng.random((count, dim))

    return model


@dataclass(frozen=True)
class CouplingSpec:
    q_n: float                     # edge probability of the approximating graphs
    q: float                       # edge probability of the limit graphs
    point_model: Callable = None   # shared vertex sampler, rng -> (k, d) array
    sample_count: int = 10000
    p: float = 1.0
    k: float = 1.0                 # metric cutoff; C_X = C_Y = K
    variant: str = GOSPA2
    seed: int = 0

    def __post_init__(self):
        for name in ("q_n", "q"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {val}")
        if self.point_model is None:
            object.__setattr__(self, "point_model", binomial_uniform_points(5))


@dataclass
class CouplingCheck:
    lhs: float          # Monte Carlo estimate of E[d^p] over the coupled pairs
    rhs: float          # bound: factor * OSPA-Wasserstein term + C_Y^p |q_n - q| / 2
    lhs_se: float
    diff_se: float
    passed: bool
    samples: int


def _ospa_p(points1, points2, c: float, p: float) -> float:
    """p-th power of the OSPA distance between two point patterns."""
    m, n = len(points1), len(points2)
    if m == 0 and n == 0:
        return 0.0
    big = max(m, n)
    costs = np.full((big, big), c ** p)
    if m and n:
        diff = np.asarray(points1)[:, None, :] - np.asarray(points2)[None, :, :]
        d = np.minimum(c, np.sqrt((diff ** 2).sum(axis=2)))
        costs[:m, :n] = d ** p
    if m < big:
        costs[m:, :] = c ** p
    if n < big:
        costs[:, n:] = c ** p
    _, total = solve_lap(costs)
    return total / big


def coupling_bound_check(spec: CouplingSpec) -> CouplingCheck:
    """Monte Carlo check of the edge-coupling bound for the GOSPA metrics.

    Builds the coupled pair with shared vertices and shared uniform edge
    variables (edge present when the uniform falls below q_n resp. q),
    estimates E[d^p] over the pairs, and compares against the bound whose
    point-pattern term is estimated on the same coupling (any coupling
    upper-bounds the Wasserstein term, so the comparison stays one-sided).
    """
    if spec.sample_count < 100:
        raise ValueError("sample_count must be at least 100")
    cfg = simulation_config(spec.k, p=spec.p, variant=spec.variant)
    factor = 2.0 if spec.variant == GOSPA1 else 1.0 + max(spec.q_n, spec.q)
    cy_term = spec.k ** spec.p * abs(spec.q_n - spec.q) / 2.0
    lhs = np.zeros(spec.sample_count)
    rhs = np.zeros(spec.sample_count)
    for s in range(spec.sample_count):
        seed = _child_seed(spec.seed, s)
        points = spec.point_model(_stream(seed, "points"))
        m = len(points)
        draws = _stream(seed, "edge_coupling").random(m * (m - 1) // 2)
        g_n = _er_graph(points, draws, spec.q_n)
        g = _er_graph(points, draws, spec.q)
        if m == 0:
            lhs[s] = 0.0
        else:
            res = solve_exact(pad(g_n, g, cfg), limit=24)
            lhs[s] = res.distance ** spec.p
        rhs[s] = factor * _ospa_p(points, points, cfg.penalty, spec.p) + cy_term
    diff = lhs - rhs
    lhs_se = float(lhs.std(ddof=1) / np.sqrt(spec.sample_count))
    diff_se = float(diff.std(ddof=1) / np.sqrt(spec.sample_count))
    return CouplingCheck(lhs=float(lhs.mean()), rhs=float(rhs.mean()),
                         lhs_se=lhs_se, diff_se=diff_se,
                         passed=bool(lhs.mean() <= rhs.mean() + 3 * diff_se),
                         samples=spec.sample_count)
