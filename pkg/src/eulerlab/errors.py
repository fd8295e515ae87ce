"""Exception types raised across eulerlab."""


class EulerLabError(Exception):
    """Base class for all library errors."""


class DomainError(EulerLabError, ValueError):
    """Argument outside the domain of a function (poles, branch points)."""


class PoleError(DomainError):
    """Evaluation exactly at, or within rounding distance of, a pole."""


class ResourceError(EulerLabError, MemoryError):
    """Request would exceed the configured memory budget."""


class ZeroFileError(EulerLabError, ValueError):
    """Malformed zero-ordinate file."""

    def __init__(self, path, lineno, message):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


class MissingZerosError(EulerLabError, LookupError):
    """A zero sum needs ordinates for a character that were not supplied."""


class UndeterminedOrderError(EulerLabError, ArithmeticError):
    """All Taylor coefficients up to the maximal order fall below threshold."""
