"""Attributed simple graphs and their JSON file format.

A graph is a vertex count ``n``, a sequence of vertex attributes and a
symmetric map of edge attributes.  Pairs absent from the edge map carry the
"no edge" element of the edge-attribute space, which is owned by the edge
metric (see :mod:`agdist.attrmetrics`), not by the graph.  Vertices are
indexed 0..n-1 in memory; the JSON file format uses 1-based indices.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass, field

from .errors import GraphFormatError


def _normalize_edges(n, edges):
    """Validate and canonicalize edge input to a dict keyed by (i, j), i < j."""
    out = {}
    if edges is None:
        return out
    items = edges.items() if isinstance(edges, dict) else ((e[:2], e[2]) for e in edges)
    for (i, j), attr in items:
        if not (isinstance(i, numbers.Integral) and isinstance(j, numbers.Integral)):
            raise GraphFormatError(f"edge indices must be integers, got ({i!r}, {j!r})")
        i, j = int(i), int(j)
        if i == j:
            raise GraphFormatError(f"self-loop at vertex {i} is not allowed")
        if not (0 <= i < n and 0 <= j < n):
            raise GraphFormatError(f"edge ({i}, {j}) out of range for n={n}")
        key = (i, j) if i < j else (j, i)
        if key in out and out[key] != attr:
            raise GraphFormatError(f"conflicting attributes for edge {key}")
        out[key] = attr
    return out


@dataclass(frozen=True)
class AttributedGraph:
    """Finite simple graph with vertex and edge attributes.

    ``vertex_attrs`` is a sequence of length ``n`` with values in the
    vertex-attribute space; ``edges`` maps unordered vertex pairs to values
    in the edge-attribute space.  Accepted edge inputs: a dict
    ``{(i, j): attr}`` or an iterable of ``(i, j, attr)`` triples.
    Instances are immutable and safe to share across threads.
    """

    vertex_attrs: tuple
    edge_attrs: dict = field(default_factory=dict)

    def __init__(self, vertex_attrs, edges=None):
        object.__setattr__(self, "vertex_attrs", tuple(vertex_attrs))
        object.__setattr__(self, "edge_attrs", _normalize_edges(len(self.vertex_attrs), edges))

    @property
    def n(self) -> int:
        return len(self.vertex_attrs)

    @property
    def num_edges(self) -> int:
        return len(self.edge_attrs)

    def edge(self, i, j, default=None):
        """Attribute of edge {i, j}, or ``default`` when the pair is absent."""
        if i == j:
            return default
        key = (i, j) if i < j else (j, i)
        return self.edge_attrs.get(key, default)

    def relabeled(self, perm) -> "AttributedGraph":
        """Graph with vertex i renamed to perm[i] (used for invariance checks)."""
        perm = [int(x) for x in perm]
        if sorted(perm) != list(range(self.n)):
            raise GraphFormatError("relabeling must be a permutation of 0..n-1")
        attrs = [None] * self.n
        for i, a in enumerate(self.vertex_attrs):
            attrs[perm[i]] = a
        edges = {}
        for (i, j), a in self.edge_attrs.items():
            pi, pj = perm[i], perm[j]
            edges[(pi, pj) if pi < pj else (pj, pi)] = a
        return AttributedGraph(attrs, edges)


def empty_graph() -> AttributedGraph:
    return AttributedGraph(())


def graph_to_dict(g: AttributedGraph) -> dict:
    """JSON-ready dict: 1-based edge indices, vertex attrs as number lists."""
    vertex_attrs = []
    for a in g.vertex_attrs:
        if isinstance(a, (int, float)):
            vertex_attrs.append([float(a)])
        else:
            vertex_attrs.append([float(x) for x in a])
    edges = [[i + 1, j + 1, attr] for (i, j), attr in sorted(g.edge_attrs.items())]
    return {"n": g.n, "vertex_attrs": vertex_attrs, "edges": edges}


def graph_from_dict(data: dict) -> AttributedGraph:
    try:
        n = data["n"]
        raw_attrs = data["vertex_attrs"]
        raw_edges = data.get("edges", [])
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"missing required graph field: {exc}") from exc
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError(f"invalid vertex count: {n!r}")
    if len(raw_attrs) != n:
        raise GraphFormatError(f"expected {n} vertex attributes, got {len(raw_attrs)}")
    attrs = []
    for a in raw_attrs:
        if isinstance(a, (int, float)):
            attrs.append(float(a))
        elif isinstance(a, list) and all(isinstance(x, (int, float)) for x in a):
            attrs.append(tuple(float(x) for x in a))
        else:
            raise GraphFormatError(f"vertex attribute must be a number list, got {a!r}")
    edges = []
    for entry in raw_edges:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise GraphFormatError(f"edge entry must be [i, j, attr], got {entry!r}")
        i, j, attr = entry
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(f"edge indices must be in 1..{n}, got ({i!r}, {j!r})")
        if not isinstance(attr, (int, float, str)):
            raise GraphFormatError(f"edge attribute must be a number or string, got {attr!r}")
        edges.append((i - 1, j - 1, attr))
    return AttributedGraph(attrs, edges)


def write_graph(g: AttributedGraph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh, indent=1)
        fh.write("\n")


def read_graph(path) -> AttributedGraph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: not valid JSON ({exc})") from exc
    return graph_from_dict(data)
