"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class RuinMomentsError(Exception):
    """Base class for all package errors."""


class ShapeError(RuinMomentsError, ValueError):
    """Operands disagree on variable count, vector length or formula shape."""


class DomainError(RuinMomentsError, ValueError):
    """An argument lies outside the domain of the operation."""


class EvaluationError(RuinMomentsError, ZeroDivisionError):
    """A formula was evaluated at a pole of its denominator."""


class IncompleteInputError(RuinMomentsError, ValueError):
    """A moment set is missing orders required by a conversion."""


class UnsupportedConfigurationError(RuinMomentsError, ValueError):
    """The requested player count has no supported ansatz."""


class DerivationError(RuinMomentsError):
    """An ansatz system was not uniquely solvable.

    The offending :class:`~ruinmoments.linalg.SolutionReport` is attached as
    ``report`` together with the order at which the failure happened.
    """

    def __init__(self, message: str, report=None, order: int | None = None):
        super().__init__(message)
        self.report = report
        self.order = order


class ParseError(RuinMomentsError, ValueError):
    """Formula text does not conform to the canonical grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
