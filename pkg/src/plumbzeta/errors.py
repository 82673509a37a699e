"""Exceptions shared across the series builders."""
from .graph import GraphError
from .lattice import NotNegativeDefinite
from .motivic import NotDivisible
from .series import SeriesMismatch


class UnsupportedClass(ValueError):
    """The requested construction needs a tree of rational curves or a cusp cycle."""


class NotInSprime(ValueError):
    """The cycle is not in the anti-nef cone S'."""


class NonUniqueMinimal(AssertionError):
    """Brute force found several minimal closed supersets."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer came out fractional."""


class TruncationInsufficient(ValueError):
    """A finite sum needs coefficients beyond the series truncation."""

    def __init__(self, required: int, available: int):
        super().__init__(f"truncation order {available} too small; need at least {required}")
        self.required = required
        self.available = available


__all__ = [
    "GraphError",
    "IntegralityError",
    "NonUniqueMinimal",
    "NotDivisible",
    "NotInSprime",
    "NotNegativeDefinite",
    "SeriesMismatch",
    "TruncationInsufficient",
    "UnsupportedClass",
]
