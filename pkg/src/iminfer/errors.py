"""Exception types shared across the package."""


class IminferError(Exception):
    """Base class for all library errors."""


class EmptyFocalSet(IminferError):
    """A focal element is empty, or a realization maps to no parameter value."""


class MassNotNormalized(IminferError):
    """Mass values do not sum to one within tolerance, or a mass is invalid."""


class DegenerateSample(IminferError):
    """A data sample carries no information (zero spread, too few points)."""


class DegenerateGrid(IminferError):
    """An evaluation grid has fewer than two points or zero width."""


class RangeExceeded(IminferError):
    """An input lies outside the documented numeric range of a routine."""


class ThetaZero(IminferError):
    """The coefficient-of-variation parameter theta = 0 has no auxiliary image."""
