"""Exception types shared across the package."""


class EdgeColorError(Exception):
    """Base class for all package errors."""


class GraphParseError(EdgeColorError, ValueError):
    """Malformed edge-list input.  ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UsageError(EdgeColorError, ValueError):
    pass


class PreconditionError(EdgeColorError, ValueError):
    pass


class BlowUpError(EdgeColorError, RuntimeError):
    """Augmentation enumeration would exceed a configured cap."""


class OracleCapError(EdgeColorError, RuntimeError):
    """A brute-force oracle was asked to solve an instance above its size cap."""


class GuaranteeError(EdgeColorError, AssertionError):
    """A hard-asserted guarantee failed at run time."""
