"""Exception types shared across the package."""


class GaussMargError(Exception):
    """Base class for every error raised by this library."""


class ArgumentError(GaussMargError, ValueError):
    """An argument violates a documented precondition (dimension, range, order)."""


class CapacityError(GaussMargError):
    """The request exceeds the library's deliberate size limits."""


class ValidityError(GaussMargError):
    """epsilon lies outside the admissible interval for the given sigma and polynomial.

    The `admissible` attribute carries the closed interval (lo, hi) that
    would have been accepted.
    """

    def __init__(self, message, admissible):
        super().__init__(message)
        self.admissible = admissible


class PreconditionError(GaussMargError):
    """A runtime precheck failed; `witness` carries the point that violated it."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
