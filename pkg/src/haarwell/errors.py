"""Exception hierarchy shared by every haarwell module."""

from __future__ import annotations


class HaarwellError(Exception):
    """Base class for all errors raised by haarwell."""


class ParseError(HaarwellError, ValueError):
    """Malformed cycle, pairing or monomial text."""


class CapExceededError(HaarwellError, ValueError):
    """A size argument is above the hard cap of the requested operation."""

    def __init__(self, what: str, value, cap):
        super().__init__(f"{what}={value} exceeds the cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


class PoleError(HaarwellError, ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""

    def __init__(self, point, message: str | None = None):
        super().__init__(message or f"pole at n = {point}")
        self.point = point


class SingularMatrixError(HaarwellError, ArithmeticError):
    """Matrix inversion hit a singular matrix; ``rank`` is the rank found."""

    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix of size {size} is singular (rank {rank})")
        self.rank = rank
        self.size = size


class SizeMismatchError(HaarwellError, ValueError):
    """Operands do not have compatible sizes or degrees."""
