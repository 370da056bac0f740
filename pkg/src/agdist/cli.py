"""Command-line surface: distances, matrices, simulations, tests, BQP export.

Exit codes: 0 success, 1 usage error, 2 computation error.  Graph files use
the documented JSON schema; the metric is assembled from the flags as in
the simulation studies (cutoff-K Euclidean vertex metric, discrete-K edge
metric).  A JSON config file given via --config supplies defaults for any
flag not set explicitly on the command line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import simgen, stats
from .attrmetrics import discrete, euclidean_cutoff
from .auction import AuctionParams
from .bqp import export_bqp, write_bqp
from .config import MetricConfig
from .errors import AgdistError
from .graphs import read_graph
from .metrics import DistanceRequest, distance
from .padding import pad


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


_METRIC_FLAGS = dict(metric="gospa2", p=1.0, penalty=None, K=1.0)
_DEFAULTS = {
    "dist": dict(**_METRIC_FLAGS, solver="auto", epsilon=0.01, stop_at=3, maxiter=100,
                 format="json", output=None),
    "matrix": dict(**_METRIC_FLAGS, solver="auto", threads=1, output=None,
                   epsilon=0.01, stop_at=3, maxiter=100),
    "simulate": dict(scenario=1, preset="small", samples=20, seed=20240, output=None,
                     sizes=None, ks=None, times=False),
    "anova": dict(n_perm=999, seed=0, exhaustive=False, output=None),
    "export-bqp": dict(**_METRIC_FLAGS, output=None),
}


def _add_metric_flags(sub):
    sub.add_argument("--metric", choices=("gtt", "gospa1", "gospa2"),
                     default=argparse.SUPPRESS, help="metric variant")
    sub.add_argument("--p", type=float, default=argparse.SUPPRESS, help="order p >= 1")
    sub.add_argument("--penalty", type=float, default=argparse.SUPPRESS,
                     help="penalty C / C1 / C2 (default: minimal legal value)")
    sub.add_argument("--K", type=float, default=argparse.SUPPRESS,
                     help="cutoff of the vertex metric and scale of the edge metric")


def _add_auction_flags(sub):
    sub.add_argument("--epsilon", type=float, default=argparse.SUPPRESS,
                     help="auction bid increment floor")
    sub.add_argument("--stop-at", dest="stop_at", type=int, default=argparse.SUPPRESS,
                     help="stop after this many full assignments")
    sub.add_argument("--maxiter", type=int, default=argparse.SUPPRESS,
                     help="cap on auction sweeps")


def build_parser() -> _Parser:
    parser = _Parser(prog="agdist",
                     description="Assignment-based attributed-graph distances")
    parser.add_argument("--config", default=None,
                        help="JSON file with default values for the flags")
    sub = parser.add_subparsers(dest="command")

    p_dist = sub.add_parser("dist", help="distance between two graph files")
    p_dist.add_argument("g1")
    p_dist.add_argument("g2")
    _add_metric_flags(p_dist)
    _add_auction_flags(p_dist)
    p_dist.add_argument("--solver", choices=("exact", "faq", "auction", "auto"),
                        default=argparse.SUPPRESS)
    p_dist.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    p_dist.add_argument("--output", "-o", default=argparse.SUPPRESS)

    p_mat = sub.add_parser("matrix", help="pairwise distance matrix of a graph directory")
    p_mat.add_argument("dir")
    _add_metric_flags(p_mat)
    _add_auction_flags(p_mat)
    p_mat.add_argument("--solver", choices=("exact", "faq", "auction", "auto"),
                       default=argparse.SUPPRESS)
    p_mat.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    p_mat.add_argument("--output", "-o", default=argparse.SUPPRESS)

    p_sim = sub.add_parser("simulate", help="run the evaluation scenarios")
    p_sim.add_argument("--scenario", type=int, choices=(1, 2), default=argparse.SUPPRESS)
    p_sim.add_argument("--preset", choices=("small", "large"), default=argparse.SUPPRESS,
                       help="'large' is the long-run grid with sizes up to 100")
    p_sim.add_argument("--samples", type=int, default=argparse.SUPPRESS)
    p_sim.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p_sim.add_argument("--sizes", default=argparse.SUPPRESS,
                       help="restrict the grid, e.g. '4x4,8x8'")
    p_sim.add_argument("--ks", default=argparse.SUPPRESS,
                       help="restrict the K values, e.g. '0.1,0.4'")
    p_sim.add_argument("--times", action="store_true", default=argparse.SUPPRESS,
                       help="append wall-time columns (non-deterministic output)")
    p_sim.add_argument("--output", "-o", default=argparse.SUPPRESS)

    p_an = sub.add_parser("anova", help="permutation tests on a distance matrix")
    p_an.add_argument("matrix")
    p_an.add_argument("groups")
    p_an.add_argument("--n-perm", dest="n_perm", type=int, default=argparse.SUPPRESS)
    p_an.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p_an.add_argument("--exhaustive", action="store_true", default=argparse.SUPPRESS)
    p_an.add_argument("--output", "-o", default=argparse.SUPPRESS)

    p_bqp = sub.add_parser("export-bqp", help="write the BQP dump of a padded pair")
    p_bqp.add_argument("g1")
    p_bqp.add_argument("g2")
    _add_metric_flags(p_bqp)
    p_bqp.add_argument("--output", "-o", default=argparse.SUPPRESS)

    return parser


def _merge_options(args) -> dict:
    defaults = dict(_DEFAULTS[args.command])
    if args.config:
        with open(args.config) as fh:
            overrides = json.load(fh)
        unknown = set(overrides) - set(defaults)
        if unknown:
            raise UsageError(f"config keys not valid for {args.command}: {sorted(unknown)}")
        defaults.update(overrides)
    explicit = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    defaults.update(explicit)
    return defaults


def _build_config(opts) -> MetricConfig:
    k = opts["K"]
    vertex = euclidean_cutoff(k)
    edge = discrete(k)
    penalty = opts["penalty"]
    if penalty is None:
        share = {"gtt": 1.0, "gospa1": 0.5, "gospa2": 1.0}[opts["metric"]]
        penalty = (k ** opts["p"] * (1 + share)) ** (1.0 / opts["p"])
    return MetricConfig(variant=opts["metric"], p=opts["p"], penalty=penalty,
                        vertex_metric=vertex, edge_metric=edge)


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_dist(opts) -> int:
    g1, g2 = read_graph(opts["g1"]), read_graph(opts["g2"])
    cfg = _build_config(opts)
    req = DistanceRequest(
        g1, g2, cfg, solver=opts["solver"],
        auction_params=AuctionParams(opts["epsilon"], opts["stop_at"], opts["maxiter"]))
    res = distance(req)
    perm_1based = [int(x) + 1 for x in res.permutation]
    if opts["format"] == "json":
        payload = {"distance": res.distance, "permutation": perm_1based,
                   "solver": res.solver, "objective": res.objective,
                   "vertex_cost": res.breakdown.vertex_cost,
                   "edge_cost": res.breakdown.edge_cost,
                   "penalty_cost": res.breakdown.penalty_cost}
        _emit(json.dumps(payload, indent=1) + "\n", opts["output"])
    else:
        lines = ["distance,vertex_cost,edge_cost,penalty_cost,solver,permutation",
                 f"{res.distance:.17g},{res.breakdown.vertex_cost:.17g},"
                 f"{res.breakdown.edge_cost:.17g},{res.breakdown.penalty_cost:.17g},"
                 f"{res.solver},{' '.join(map(str, perm_1based))}"]
        _emit("\n".join(lines) + "\n", opts["output"])
    return 0


def _cmd_matrix(opts) -> int:
    paths = sorted(Path(opts["dir"]).glob("*.json"))
    if len(paths) < 2:
        raise UsageError(f"need at least two *.json graphs in {opts['dir']}")
    graphs = [read_graph(p) for p in paths]
    labels = [p.stem for p in paths]
    cfg = _build_config(opts)
    mat = stats.distance_matrix(
        graphs, cfg, solver=opts["solver"], labels=labels, n_jobs=opts["threads"],
        auction_params=AuctionParams(opts["epsilon"], opts["stop_at"], opts["maxiter"]))
    _emit(stats.matrix_to_csv(mat), opts["output"])
    return 0


def _parse_sizes(text):
    sizes = []
    for part in text.split(","):
        m, _, n = part.strip().partition("x")
        sizes.append((int(m), int(n) if n else int(m)))
    return tuple(sizes)


def _cmd_simulate(opts) -> int:
    scenario = opts["scenario"]
    if opts["preset"] == "small":
        sizes = _parse_sizes(opts["sizes"]) if opts["sizes"] else simgen.SIZES_SMALL
        ks = tuple(float(x) for x in opts["ks"].split(",")) if opts["ks"] else (0.1, 0.4, 0.8)
        settings = simgen.small_grid(scenario=scenario, sizes=sizes, k_values=ks,
                                     seed=opts["seed"])
    else:
        ks = tuple(float(x) for x in opts["ks"].split(",")) if opts["ks"] else (0.1, 0.4)
        settings = simgen.large_grid(scenario=scenario, k_values=ks, seed=opts["seed"])
    results = simgen.run_experiment(settings, samples=opts["samples"])
    _emit(simgen.experiment_csv(results, include_times=opts["times"]), opts["output"])
    return 0


def _cmd_anova(opts) -> int:
    matrix = stats.matrix_from_csv(Path(opts["matrix"]).read_text())
    groups = stats.groups_from_csv(Path(opts["groups"]).read_text())
    sample = stats.GroupedSample(matrix, groups)
    kwargs = dict(n_perm=opts["n_perm"], seed=opts["seed"],
                  exhaustive=opts["exhaustive"])
    results = [stats.permanova_test(sample, **kwargs), stats.levene_test(sample, **kwargs)]
    _emit(stats.results_to_csv(results), opts["output"])
    return 0


def _cmd_export_bqp(opts) -> int:
    g1, g2 = read_graph(opts["g1"]), read_graph(opts["g2"])
    cfg = _build_config(opts)
    instance = export_bqp(pad(g1, g2, cfg))
    if not opts["output"]:
        raise UsageError("export-bqp requires --output")
    write_bqp(instance, opts["output"])
    return 0


_COMMANDS = {"dist": _cmd_dist, "matrix": _cmd_matrix, "simulate": _cmd_simulate,
             "anova": _cmd_anova, "export-bqp": _cmd_export_bqp}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage())
        opts = _merge_options(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](opts)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (AgdistError, ValueError, OSError) as exc:
        print(exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
