"""Metric variants and their validated parameter sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .attrmetrics import AttributeMetric
from .errors import PenaltyViolation

GTT = "gtt"
GOSPA1 = "gospa1"
GOSPA2 = "gospa2"
VARIANTS = (GTT, GOSPA1, GOSPA2)


@dataclass(frozen=True)
class MetricConfig:
    """Variant, order p, penalty and the two attribute pseudometrics.

    Penalty constraints are enforced at construction: GTT needs C > 0;
    GOSPA1 needs C1^p >= C_X^p + C_Y^p / 2; GOSPA2 needs C2^p >= C_X^p +
    C_Y^p; both GOSPA variants require finite diameter bounds.  Below these
    thresholds the triangle inequality provably fails, so violations are
    hard errors.  ``allow_invalid_penalty=True`` bypasses the check (used
    only to reproduce the documented counterexamples).
    """

    variant: str
    p: float
    penalty: float
    vertex_metric: AttributeMetric
    edge_metric: AttributeMetric
    allow_invalid_penalty: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise PenaltyViolation(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.p < 1:
            raise PenaltyViolation(f"order p must be >= 1, got {self.p}")
        if self.allow_invalid_penalty:
            return
        if self.variant == GTT:
            if not self.penalty > 0:
                raise PenaltyViolation(f"GTT penalty C must be positive, got {self.penalty}")
            return
        cx, cy = self.c_x, self.c_y
        if not (math.isfinite(cx) and math.isfinite(cy)):
            raise PenaltyViolation(
                f"{self.variant} requires finite diameter bounds, got C_X={cx}, C_Y={cy}")
        edge_share = 0.5 if self.variant == GOSPA1 else 1.0
        floor = cx ** self.p + edge_share * cy ** self.p
        if self.penalty ** self.p < floor - 1e-12:
            raise PenaltyViolation(
                f"{self.variant} penalty {self.penalty} violates penalty^p >= "
                f"C_X^p + {edge_share} * C_Y^p = {floor ** (1 / self.p):.6g}^p")

    @property
    def c_x(self) -> float:
        return self.vertex_metric.diameter_bound

    @property
    def c_y(self) -> float:
        return self.edge_metric.diameter_bound

    @property
    def aux_vertex_cost_p(self) -> float:
        """p-th power cost of matching a real vertex to an auxiliary one."""
        if self.variant == GTT:
            return self.penalty ** self.p
        if self.variant == GOSPA1:
            return self.penalty ** self.p - 0.5 * self.c_y ** self.p
        return self.penalty ** self.p

    @property
    def is_relative(self) -> bool:
        """GOSPA variants normalize by the padded size; GTT does not."""
        return self.variant in (GOSPA1, GOSPA2)
