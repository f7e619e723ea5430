"""Exception types raised by hardysplit."""


class InvalidCurveError(ValueError):
    """Curve parameters do not describe a simple counterclockwise curve."""


class OffsetTooLargeError(ValueError):
    """A parallel curve self-intersects or collapses."""


class UnsupportedCurveError(ValueError):
    """The operation needs a smooth (or disc) boundary."""


class CurveMismatchError(ValueError):
    """Boundary samples belong to a different curve."""


class PointLocationError(ValueError):
    """Target point is on the wrong side of the curve."""


class NotHardyError(ValueError):
    """Boundary data is not (numerically) in the interior Hardy class."""


class DataNotRealError(ValueError):
    """Real-valued boundary data was required."""


class PathLeavesDomainError(ValueError):
    """An integration path crossed the boundary."""


class ExtrapolationError(RuntimeError):
    """Principal-value extrapolation did not converge."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class DegenerateFitError(ValueError):
    """Least-squares fit had nothing to fit."""


class AccuracyWarning(UserWarning):
    """Quadrature is used outside the range where it is accurate."""
