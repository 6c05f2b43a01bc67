"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: parse errors (2), domain errors (3),
convergence errors (4).
"""


class DhoError(Exception):
    """Base class for all library errors."""


class DomainError(DhoError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class UnsupportedError(DhoError, ValueError):
    """Request outside the implemented (or published) range of validity."""


class ParseError(DhoError, ValueError):
    """Malformed state/config serialization."""


class ConvergenceError(DhoError, RuntimeError):
    """Numerical integration failed to reach the requested tolerance.

    Carries the best available estimate so callers can still report it.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class ConsistencyError(DhoError, RuntimeError):
    """Two exact routes to the same quantity disagree; signals a bug."""
