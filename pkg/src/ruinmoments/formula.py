"""Rational formulas ``numerator / (sum of variables)^k``.

Every moment formula in the package has this shape: the denominator is a
power of the total capital A+B+C (or A+B), which is conserved by every
transfer of a dollar.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DomainError, EvaluationError, ShapeError
from .poly import MultiPoly, Scalar


class RationalFormula:
    """Immutable ``numerator / S^k`` where ``S`` is the sum of the variables.

    Construction cancels every factor of ``S`` the numerator shares with the
    denominator, so equal formulas have equal fields.
    """

    __slots__ = ("_num", "_k")

    def __init__(self, numerator: MultiPoly, denominator_power: int = 0):
        if denominator_power < 0:
            raise ShapeError("denominator power must be non-negative")
        k = denominator_power
        if numerator.is_zero():
            k = 0
        while k > 0:
            q, r = numerator.divmod_linear_sum()
            if not r.is_zero():
                break
            numerator, k = q, k - 1
        self._num = numerator
        self._k = k

    @classmethod
    def polynomial(cls, p: MultiPoly) -> "RationalFormula":
        return cls(p, 0)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "RationalFormula":
        return cls(MultiPoly.constant(value, nvars), 0)

    @property
    def numerator(self) -> MultiPoly:
        return self._num

    @property
    def denominator_power(self) -> int:
        return self._k

    @property
    def nvars(self) -> int:
        return self._num.nvars

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFormula):
            return self._k == other._k and self._num == other._num
        if isinstance(other, MultiPoly):
            return self._k == 0 and self._num == other
        if isinstance(other, (int, Fraction)):
            return self._k == 0 and self._num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._k))

    def __repr__(self) -> str:
        return f"RationalFormula({self._num!r}, k={self._k})"

    # -- arithmetic -------------------------------------------------------

    def _lift(self, k: int) -> MultiPoly:
        # numerator rewritten over S^k, k >= self._k
        if k == self._k:
            return self._num
        return self._num * MultiPoly.sum_of_variables(self.nvars) ** (k - self._k)

    def _coerce(self, other) -> "RationalFormula":
        if isinstance(other, RationalFormula):
            if other.nvars != self.nvars:
                raise ShapeError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, MultiPoly):
            return RationalFormula(other, 0)._checked(self.nvars)
        if isinstance(other, (int, Fraction)):
            return RationalFormula.constant(other, self.nvars)
        raise TypeError(type(other).__name__)

    def _checked(self, nvars: int) -> "RationalFormula":
        if self.nvars != nvars:
            raise ShapeError(f"variable-count mismatch: {nvars} vs {self.nvars}")
        return self

    def __add__(self, other) -> "RationalFormula":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        k = max(self._k, other._k)
        return RationalFormula(self._lift(k) + other._lift(k), k)

    __radd__ = __add__

    def __neg__(self) -> "RationalFormula":
        return RationalFormula(-self._num, self._k)

    def __sub__(self, other) -> "RationalFormula":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFormula":
        return (-self) + other

    def __mul__(self, other) -> "RationalFormula":
        if isinstance(other, (int, Fraction)):
            return RationalFormula(self._num * other, self._k)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFormula(self._num * other._num, self._k + other._k)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RationalFormula":
        return RationalFormula(self._num**exponent, self._k * exponent)

    def shift(self, offsets: Sequence[int]) -> "RationalFormula":
        """Shift by a transfer vector.  Offsets must sum to zero so that the
        denominator is unchanged."""
        if self._k and sum(offsets) != 0:
            raise ShapeError("shift would move the denominator; offsets must sum to 0")
        return RationalFormula(self._num.shift(offsets), self._k)

    def permute(self, perm: Sequence[int]) -> "RationalFormula":
        return RationalFormula(self._num.permute(perm), self._k)


def evaluate_formula(f: RationalFormula, point: Sequence[Scalar]) -> Fraction:
    """Exact value of ``f`` at ``point``."""
    if len(point) != f.nvars:
        raise ShapeError(f"point has {len(point)} coordinates, need {f.nvars}")
    num = f.numerator.evaluate(point)
    if f.denominator_power == 0:
        return num
    total = sum((Fraction(x) for x in point), Fraction(0))
    if total == 0:
        raise EvaluationError(f"denominator vanishes at {tuple(point)}")
    return num / total**f.denominator_power


def leading_univariate(f: RationalFormula) -> tuple[int, Fraction]:
    """Degree and leading coefficient of ``f(a, ..., a)`` as a function of ``a``.

    The denominator ``(n a)^k`` is cancelled, so the returned degree is the
    numerator degree on the diagonal minus ``k``.
    """
    diag = f.numerator.univariate_diagonal()
    if not diag:
        raise DomainError("leading term of the zero formula is undefined")
    top = max(diag)
    k = f.denominator_power
    return top - k, diag[top] / Fraction(f.nvars) ** k
