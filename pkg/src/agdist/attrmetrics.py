"""Pseudometrics on vertex- and edge-attribute spaces.

Built-in kinds:

* ``euclidean_cutoff(K)`` -- min{K, ||a - b||} on numeric vectors.
* ``discrete(K)``         -- K * 1{a != b} on arbitrary hashable values.
* ``absolute_difference`` -- |a - b| on scalars (unbounded unless capped).
* ``zero``                -- identically 0 (ignores the attribute entirely).
* ``custom``              -- user-supplied function.

An edge metric additionally designates the "no edge" element; pairs missing
from a graph's edge map are read as that element.  For GOSPA2 with order
p > 1 the edge metric must satisfy d(y1, y2) <= max{d(y1, y0), d(y0, y2)};
this holds for ``discrete`` and for ``absolute_difference`` with no-edge
element 0 and non-negative attributes, and is the caller's responsibility
for ``custom`` metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class AttributeMetric:
    kind: str
    cutoff: Optional[float] = None          # K for euclidean_cutoff / discrete
    diameter_bound: float = math.inf        # C_X or C_Y when finite
    no_edge_value: object = None            # y0; only meaningful for edge metrics
    func: Optional[Callable] = None         # custom distance function

    def dist(self, a, b) -> float:
        if self.kind == "euclidean_cutoff":
            d = float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
            return min(self.cutoff, d)
        if self.kind == "discrete":
            return 0.0 if a == b else self.cutoff
        if self.kind == "absolute_difference":
            return abs(float(a) - float(b))
        if self.kind == "zero":
            return 0.0
        return float(self.func(a, b))

    def pairwise(self, xs, ys) -> np.ndarray:
        """Matrix of distances between two attribute sequences."""
        if self.kind == "zero":
            return np.zeros((len(xs), len(ys)))
        if self.kind == "euclidean_cutoff":
            if not len(xs) or not len(ys):
                return np.zeros((len(xs), len(ys)))
            a = np.asarray([np.ravel(np.asarray(x, dtype=float)) for x in xs])
            b = np.asarray([np.ravel(np.asarray(y, dtype=float)) for y in ys])
            diff = a[:, None, :] - b[None, :, :]
            return np.minimum(self.cutoff, np.sqrt((diff ** 2).sum(axis=2)))
        if self.kind == "absolute_difference":
            a = np.asarray([float(x) for x in xs])
            b = np.asarray([float(y) for y in ys])
            return np.abs(a[:, None] - b[None, :])
        out = np.zeros((len(xs), len(ys)))
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                out[i, j] = self.dist(x, y)
        return out


def euclidean_cutoff(k: float) -> AttributeMetric:
    """d(a, b) = min{K, ||a - b||}; diameter bound K."""
    if k <= 0:
        raise ValueError("cutoff K must be positive")
    return AttributeMetric(kind="euclidean_cutoff", cutoff=float(k), diameter_bound=float(k))


def discrete(k: float, no_edge_value=0) -> AttributeMetric:
    """d(a, b) = K * 1{a != b}; diameter bound K."""
    if k <= 0:
        raise ValueError("cutoff K must be positive")
    return AttributeMetric(kind="discrete", cutoff=float(k), diameter_bound=float(k),
                           no_edge_value=no_edge_value)


def absolute_difference(diameter_bound: float = math.inf, no_edge_value=0.0) -> AttributeMetric:
    """d(a, b) = |a - b| on scalars; optionally declare a diameter bound."""
    return AttributeMetric(kind="absolute_difference", diameter_bound=float(diameter_bound),
                           no_edge_value=no_edge_value)


def zero(no_edge_value=0) -> AttributeMetric:
    """The zero pseudometric (attribute-blind); diameter bound 0."""
    return AttributeMetric(kind="zero", diameter_bound=0.0, no_edge_value=no_edge_value)


def custom(func: Callable, diameter_bound: float = math.inf, no_edge_value=None) -> AttributeMetric:
    """Wrap a user distance function; axioms are the caller's responsibility."""
    return AttributeMetric(kind="custom", diameter_bound=float(diameter_bound),
                           no_edge_value=no_edge_value, func=func)


def validate_on_samples(metric: AttributeMetric, samples, tol: float = 1e-12) -> None:
    """Spot-check pseudometric axioms on the given attribute samples.

    Checks symmetry, d(a, a) = 0, the triangle inequality on all sampled
    triples (within ``tol``) and the declared diameter bound.  Raises
    ``ValueError`` on the first violation.  Intended for custom metrics.
    """
    vals = list(samples)
    for a in vals:
        if abs(metric.dist(a, a)) > tol:
            raise ValueError(f"dist(a, a) != 0 for a={a!r}")
    for a in vals:
        for b in vals:
            dab, dba = metric.dist(a, b), metric.dist(b, a)
            if abs(dab - dba) > tol:
                raise ValueError(f"asymmetric at ({a!r}, {b!r}): {dab} vs {dba}")
            if dab < -tol:
                raise ValueError(f"negative distance at ({a!r}, {b!r})")
            if math.isfinite(metric.diameter_bound) and dab > metric.diameter_bound + tol:
                raise ValueError(f"distance {dab} exceeds diameter bound at ({a!r}, {b!r})")
    for a in vals:
        for b in vals:
            for c in vals:
                if metric.dist(a, b) > metric.dist(a, c) + metric.dist(c, b) + tol:
                    raise ValueError(f"triangle inequality fails on ({a!r}, {b!r}, {c!r})")
