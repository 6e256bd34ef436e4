"""Exception types shared across the package."""


class GapLabError(Exception):
    """Base class for all solver and analysis failures."""


class ResolutionError(GapLabError):
    """Grid too coarse to resolve a feature of the potential."""


class ConvergenceError(GapLabError):
    """An iterative method exhausted its budget before reaching tolerance."""


class PrecisionError(GapLabError):
    """Result error bars too large for the quantity to be meaningful."""


class BracketError(GapLabError):
    """A root bracket is invalid (no sign change on the interval)."""


class HypothesisError(GapLabError):
    """The potential does not satisfy the hypotheses of the requested check."""


class WindowError(GapLabError):
    """A fit window selects too few rows."""
