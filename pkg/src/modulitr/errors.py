"""Shared exception types.

Every failure mode of the exact-arithmetic layers is a subclass of
:class:`ExactError` so that callers can distinguish mathematical domain
violations from programming errors.
"""


class ExactError(ValueError):
    """Base class for all domain errors raised by this package."""


class DomainError(ExactError):
    """A precondition on the mathematical domain was violated."""


class LogTermError(ExactError):
    """Formal integration hit a simple pole that would produce a logarithm."""


class HodgeUnsupportedError(ExactError):
    """A one-point Hodge integral outside the supported range was requested.

    Carries the offending ``(g, a, k)`` triple in :attr:`key`.
    """

    def __init__(self, key):
        self.key = key
        super().__init__(f"hodge-unsupported: g={key[0]}, a={key[1]}, k={key[2]}")


class ConventionError(ExactError):
    """An extracted invariant violated a structural parity/sign assumption."""


class CacheFormatError(ExactError):
    """A cache or table file is malformed or has the wrong version."""
