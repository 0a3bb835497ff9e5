"""Exception hierarchy shared by every sxl module."""

from __future__ import annotations


class SxlError(Exception):
    """Base class for all library errors."""


class VertexLimitExceeded(SxlError):
    pass


class InvalidEdge(SxlError):
    pass


class InvalidParameter(SxlError):
    pass


class DivisibilityError(InvalidParameter):
    """The conjectured extremal join K_k v bK_1 is not integral for (k, m)."""


class ConvergenceFailure(SxlError):
    pass


class InvalidPattern(SxlError):
    pass


class SizeLimitExceeded(SxlError):
    pass


class MalformedGraph6(SxlError):
    pass


class SizeUnsupported(SxlError):
    pass


class InvalidWeights(SxlError):
    pass


class InvalidRotation(SxlError):
    pass


class BoundViolation(SxlError):
    """A scanned graph broke an asserted bound.

    ``counterexample`` holds the offending graph in graph6 form so it can be
    replayed with ``sxl lambda``.
    """

    def __init__(self, message: str, counterexample: str | None = None, **details):
        super().__init__(message)
        self.counterexample = counterexample
        self.details = details
