"""Exception hierarchy shared by the data, index and pricing layers."""

from __future__ import annotations


class RclaError(Exception):
    """Base class for all errors raised by this package."""


class DataError(RclaError):
    """Problem with input market data (CLI exit status 3)."""


class ParseError(DataError):
    """A CSV row could not be parsed."""


class ValidationError(DataError):
    """Parsed data violates a series invariant (gap, ordering, non-positive level)."""


class CoverageError(DataError):
    """A series or market does not span the requested months."""


class NumericalError(RclaError):
    """Pricing engine failure (CLI exit status 4)."""


class GridError(NumericalError):
    """Finite-difference grid too coarse or too narrow."""


class ConvergenceError(NumericalError):
    """Linear solve in the finite-difference engine failed."""
