"""Exception types raised by the tubal algebra."""


class TubalError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidDimension(TubalError):
    pass


class DimensionMismatch(TubalError):
    pass


class SingularTransform(TubalError):
    pass


class RealnessViolation(TubalError):
    """A result that should be real carries a non-negligible imaginary part.

    ``value`` holds the offending complex result when one was computed and
    ``residual`` the largest imaginary magnitude seen.
    """

    def __init__(self, message, value=None, residual=None):
        super().__init__(message)
        self.value = value
        self.residual = residual


class NotRealPreserving(RealnessViolation):
    pass


class NotDoublyRealPreserving(TubalError):
    pass


class NotUnitary(TubalError):
    pass


class NotInvertible(TubalError):
    pass


class NoConvergence(TubalError):
    pass


class RankOutOfRange(TubalError):
    pass


class ZeroTensor(TubalError):
    pass


class ParseError(TubalError):
    pass


class InvalidSpec(TubalError):
    pass
