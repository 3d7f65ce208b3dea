"""Domain errors raised across the package.

Each error carries a ``details`` dict that the CLI serializes verbatim.
"""
from __future__ import annotations


class DomainError(Exception):
    """Base class for precondition and domain failures."""

    def __init__(self, message: str = "", **details):
        super().__init__(message or type(self).__name__)
        self.details = details

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), "details": self.details}


class InvalidCharacter(DomainError):
    def __init__(self, position: int, char: str = ""):
        super().__init__(f"invalid sign character {char!r} at position {position}",
                         position=position)
        self.position = position


class EmptyInput(DomainError):
    pass


class NotReciprocal(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class BudgetExceeded(DomainError):
    pass


class StorageError(DomainError):
    pass


class NotAligned(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class NotNonnegative(DomainError):
    def __init__(self, t: float, value: float):
        super().__init__(f"w({t:.6g}) = {value:.6g} < 0", witness_t=t, value=value)
        self.t = t
        self.value = value


class OddUnitCircleMultiplicity(DomainError):
    pass


class ZeroLeading(DomainError):
    pass


class NotNormalized(DomainError):
    pass


class UntaggedFrequency(DomainError):
    pass


class HypothesisFails(DomainError):
    pass


class NotCancellation(DomainError):
    pass


class BadSupport(DomainError):
    pass


class InvalidPattern(DomainError):
    pass


class DeltaMismatch(DomainError):
    pass


class BothZero(DomainError):
    pass
