"""Exception types raised by the package."""


class ContinuationError(Exception):
    """Base class for all errors raised by rkhs_continuation."""


class DomainError(ContinuationError, ValueError):
    """A point lies outside the domain on which the kernel is defined."""


class DuplicatePointError(ContinuationError, ValueError):
    """Two of the sample/target points coincide."""

    def __init__(self, first, second, message=None):
        self.pair = (first, second)
        if message is None:
            message = f"points {first} and {second} coincide"
        super().__init__(message)


class EmptyDataError(ContinuationError, ValueError):
    """No sample points were given."""


class DimensionError(ContinuationError, ValueError):
    """Array length does not match the number of sample points."""


class RegimeError(ContinuationError):
    """Operation not defined for the instance's regime or for this eps."""


class ConvergenceError(ContinuationError, ArithmeticError):
    """A numerical routine failed to reach its residual tolerance."""


class BracketError(ContinuationError, ArithmeticError):
    """Root bracket could not be established."""
