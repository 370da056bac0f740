"""Exception types raised across the package."""


class AgdistError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(AgdistError):
    """Malformed graph data (construction or file parsing)."""


class PenaltyViolation(AgdistError):
    """Metric configuration violates the penalty / diameter constraints."""


class EmptyPair(AgdistError):
    """Both graphs are empty where a padded pair is required."""


class NotAPermutation(AgdistError):
    """The supplied index sequence is not a bijection on [0, N)."""


class TooLarge(AgdistError):
    """Instance exceeds the size cap of the exact solver."""


class NonFinite(AgdistError):
    """Cost matrix contains NaN or infinite entries."""


class UnsupportedEdgeMetric(AgdistError):
    """Edge costs are not expressible as squared scalar weight differences."""


class NoFullAssignment(AgdistError):
    """Auction terminated without ever reaching a complete matching.

    Carries the best partial assignment seen (``partial``, -1 for
    unassigned bidders) for diagnostics.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class EdgeMetricNotZero(AgdistError):
    """Point-pattern reduction requires the zero edge metric with C_Y = 0."""


class DegenerateWithinSS(AgdistError):
    """Within-group sum of squares is zero; test statistic is degenerate."""
