"""Conversions between binomial, raw and central moments, and the exact
limits of scaled central moments when all capitals are equal."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isqrt

from .errors import DomainError, IncompleteInputError, ShapeError
from .formula import RationalFormula, leading_univariate

BINOMIAL = "binomial"
RAW = "raw"
CENTRAL = "central"
KINDS = (BINOMIAL, RAW, CENTRAL)

GUARD_DIGITS = 5


class StirlingTable:
    """Triangular table of Stirling numbers of the second kind S(i, j)."""

    def __init__(self, capacity: int):
        rows = [[1]]
        for i in range(1, capacity + 1):
            prev = rows[-1]
            row = [0] * (i + 1)
            for j in range(1, i + 1):
                row[j] = (j * prev[j] if j < i else 0) + prev[j - 1]
            rows.append(row)
        self.capacity = capacity
        self.values = tuple(tuple(r) for r in rows)

    def __call__(self, i: int, j: int) -> int:
        return self.values[i][j]


@lru_cache(maxsize=8)
def _table(capacity: int) -> StirlingTable:
    return StirlingTable(capacity)


def stirling2(i: int, j: int) -> int:
    if i < 0 or j < 0:
        raise DomainError("Stirling numbers need non-negative arguments")
    if j > i:
        raise DomainError(f"S({i},{j}) requires j <= i")
    # round capacity up so nearby requests share a table
    return _table(max(32, 1 << (i.bit_length())))(i, j)


@dataclass(frozen=True)
class MomentSet:
    """Moment formulas of one kind.

    ``formulas[0]`` is order 0 for binomial moments and order 1 for raw and
    central moments.  Central sets carry the mean alongside.
    """

    players: int
    kind: str
    formulas: tuple[RationalFormula, ...]
    mean: RationalFormula | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown moment kind {self.kind!r}")
        for f in self.formulas:
            if f.nvars != self.players:
                raise ShapeError(f"formula has {f.nvars} variables, set has {self.players} players")

    @property
    def first_order(self) -> int:
        return 0 if self.kind == BINOMIAL else 1

    @property
    def max_order(self) -> int:
        return self.first_order + len(self.formulas) - 1

    def orders(self) -> range:
        return range(self.first_order, self.max_order + 1)

    def __getitem__(self, order: int) -> RationalFormula:
        idx = order - self.first_order
        if not 0 <= idx < len(self.formulas):
            raise IncompleteInputError(f"order {order} not present in {self.kind} moments")
        return self.formulas[idx]

    def items(self):
        return zip(self.orders(), self.formulas)


def binomial_to_raw(binomial: MomentSet) -> MomentSet:
    """E[D^i] = sum_j j! S(i,j) E[C(D,j)] for i = 1..I."""
    if binomial.kind != BINOMIAL:
        raise ShapeError(f"expected binomial moments, got {binomial.kind}")
    top = binomial.max_order
    if top < 1:
        raise IncompleteInputError("binomial moments must reach at least order 1")
    raw = []
    for i in range(1, top + 1):
        acc = RationalFormula.constant(0, binomial.players)
        for j in range(1, i + 1):
            acc = acc + binomial[j] * (factorial(j) * stirling2(i, j))
        raw.append(acc)
    return MomentSet(binomial.players, RAW, tuple(raw))


def raw_to_central(raw: MomentSet) -> MomentSet:
    """m_i = sum_j C(i,j) (-mu)^(i-j) E[D^j] with E[D^0] = 1."""
    if raw.kind != RAW:
        raise ShapeError(f"expected raw moments, got {raw.kind}")
    if raw.max_order < 1:
        raise IncompleteInputError("raw moments must reach at least order 1")
    mu = raw[1]
    one = RationalFormula.constant(1, raw.players)
    powers = [one]  # (-mu)^n
    for _ in range(raw.max_order):
        powers.append(powers[-1] * (-mu))
    central = [RationalFormula.constant(0, raw.players)]
    for i in range(2, raw.max_order + 1):
        acc = powers[i]
        for j in range(1, i + 1):
            acc = acc + raw[j] * powers[i - j] * comb(i, j)
        central.append(acc)
    return MomentSet(raw.players, CENTRAL, tuple(central), mean=mu)


# -- scaled limits ------------------------------------------------------------


@dataclass(frozen=True)
class ExactScaledLimit:
    """Limit L of m_i / m_2^(i/2) at equal capitals.

    ``squared_value`` is L^2 exactly; ``exact`` holds L itself when L^2 is
    the square of a rational (always so for even orders).
    """

    order: int
    squared_value: Fraction
    decimal: str
    exact: Fraction | None = None


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _decimal_exponent_of_sqrt(sq: Fraction) -> int:
    # e with 10^e <= sqrt(sq) < 10^(e+1)
    e = 0
    while sq >= Fraction(10) ** (2 * e + 2):
        e += 1
    while sq < Fraction(10) ** (2 * e):
        e -= 1
    return e


def _format_digits(n: int, e: int, digits: int) -> str:
    s = str(n)
    if e >= 0:
        if e + 1 >= len(s):
            return s + "0" * (e + 1 - len(s))
        return s[: e + 1] + "." + s[e + 1 :]
    return "0." + "0" * (-e - 1) + s


def sqrt_decimal(sq: Fraction, digits: int = 20) -> str:
    """``sqrt(sq)`` to ``digits`` significant digits, rounded half away from
    zero.  Irrational roots go through an integer square root carrying
    ``GUARD_DIGITS`` extra digits."""
    if digits < 1:
        raise DomainError("need at least one significant digit")
    sq = Fraction(sq)
    if sq < 0:
        raise DomainError("square of a real number cannot be negative")
    if sq == 0:
        return "0"
    exact = rational_sqrt(sq)
    e = _decimal_exponent_of_sqrt(sq)
    for _ in range(2):
        shift = digits - 1 - e
        if exact is not None:
            scaled = exact * Fraction(10) ** shift
            n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
        else:
            t = shift + GUARD_DIGITS
            big = sq * Fraction(10) ** (2 * t)
            r = isqrt(big.numerator // big.denominator)
            n = (r + 5 * 10 ** (GUARD_DIGITS - 1)) // 10**GUARD_DIGITS
        if n < 10**digits:
            return _format_digits(n, e, digits)
        e += 1  # rounding carried into a new leading digit
    return _format_digits(n, e, digits)


def scaled_limit(central: MomentSet, order: int, digits: int = 20) -> ExactScaledLimit:
    """Limit of the scaled central moment of the given order as the common
    capital grows, carried exactly as a square."""
    if central.kind != CENTRAL:
        raise ShapeError(f"expected central moments, got {central.kind}")
    if order < 3:
        raise DomainError("scaled limits are defined here for orders >= 3")
    d2, c2 = leading_univariate(central[2])
    di, ci = leading_univariate(central[order])
    if d2 != 4 or di != 2 * order:
        raise ShapeError(
            f"leading degrees {d2} (order 2) and {di} (order {order}) "
            f"do not scale as a^(2i)"
        )
    squared = ci * ci / c2**order
    text = sqrt_decimal(squared, digits)
    exact = rational_sqrt(squared)
    if ci < 0:
        text = "-" + text
        exact = -exact if exact is not None else None
    return ExactScaledLimit(order, squared, text, exact)
