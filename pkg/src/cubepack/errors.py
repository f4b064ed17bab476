"""Exception types shared across the package."""


class CubepackError(Exception):
    """Base class for all errors raised by cubepack."""


class InvalidParameter(CubepackError, ValueError):
    pass


class EnumerationRefused(CubepackError):
    """A code is too large to enumerate under the configured cap."""


class MaterializationRefused(CubepackError):
    """A point set is larger than the materialization cap.

    The exact size is carried in ``count`` so callers can fall back to
    counting.
    """

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class VerificationRefused(CubepackError):
    pass


class UndefinedMinWeight(CubepackError):
    pass


class InternalConsistencyFailure(CubepackError, ArithmeticError):
    """An exactness assertion failed; this indicates a bug, not bad input."""
