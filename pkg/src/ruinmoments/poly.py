"""Canonical multivariate polynomials with exact rational coefficients.

A polynomial in ``n`` variables (2 or 3 here, named A, B, C) is a mapping
from exponent tuples to :class:`fractions.Fraction` coefficients.  Zero
coefficients are never stored, so two polynomials are equal exactly when
their term mappings are equal.

Example (2 variables)::

    A^2*B - 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(-3)}

Terms are listed in graded lexicographic order: higher total degree first,
ties broken lexicographically with A > B > C.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import ShapeError

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

VARIABLE_NAMES = ("A", "B", "C")


def monomial_key(mono: Monomial) -> tuple:
    """Sort key realising graded lex order (ascending key = canonical order)."""
    return (-sum(mono), tuple(-e for e in mono))


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    """All monomials in ``nvars`` variables with total degree <= ``degree``,
    in canonical order."""
    if degree < 0:
        return []
    out = [m for m in product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    out.sort(key=monomial_key)
    return out


@lru_cache(maxsize=None)
def _binomial_shift(exponent: int, offset: int) -> tuple[tuple[int, int], ...]:
    # (x + offset)^exponent = sum_k C(exponent, k) offset^(exponent-k) x^k
    return tuple(
        (k, comb(exponent, k) * offset ** (exponent - k))
        for k in range(exponent + 1)
        if offset != 0 or k == exponent
    )


class MultiPoly:
    """Immutable polynomial over the rationals in 2 or 3 variables."""

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None, nvars: int = 3):
        if nvars < 1:
            raise ShapeError(f"variable count must be positive, got {nvars}")
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ShapeError(f"bad monomial {mono} for {nvars} variables")
            c = Fraction(coeff)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._nvars = nvars
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[Monomial, Fraction], nvars: int) -> "MultiPoly":
        # Caller guarantees well-formed monomials and no zero coefficients.
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._nvars = nvars
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._trusted({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "MultiPoly":
        value = Fraction(value)
        return cls._trusted({(0,) * nvars: value} if value else {}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise ShapeError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if k == index else 0 for k in range(nvars))
        return cls._trusted({mono: Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Scalar = 1) -> "MultiPoly":
        return cls({tuple(exponents): coeff}, len(exponents))

    @classmethod
    def variables(cls, nvars: int) -> tuple["MultiPoly", ...]:
        return tuple(cls.variable(k, nvars) for k in range(nvars))

    @classmethod
    def sum_of_variables(cls, nvars: int) -> "MultiPoly":
        return cls._trusted(
            {tuple(1 if k == j else 0 for k in range(nvars)): Fraction(1) for j in range(nvars)},
            nvars,
        )

    # -- inspection -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms as (monomial, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]))

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(m for m, _ in self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly._trusted(
            {m: c for m, c in self._terms.items() if sum(m) == degree}, self._nvars
        )

    # -- equality ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self._nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other._nvars != self._nvars:
                raise ShapeError(
                    f"variable-count mismatch: {self._nvars} vs {other._nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self._nvars)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._trusted(out, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._trusted({m: -c for m, c in self._terms.items()}, self._nvars)

    def __sub__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return MultiPoly.zero(self._nvars)
            return MultiPoly._trusted(
                {m: c * other for m, c in self._terms.items()}, self._nvars
            )
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        n = self._nvars
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(m1[k] + m2[k] for k in range(n))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly._trusted({m: c for m, c in out.items() if c}, n)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(1, self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- substitutions ----------------------------------------------------

    def shift(self, offsets: Sequence[int]) -> "MultiPoly":
        """Replace every variable v by v + offset (see :func:`shift_substitute`)."""
        return shift_substitute(self, offsets)

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variables: variable ``k`` becomes variable ``perm[k]``."""
        if sorted(perm) != list(range(self._nvars)):
            raise ShapeError(f"{perm} is not a permutation of {self._nvars} variables")
        out = {}
        for m, c in self._terms.items():
            new = [0] * self._nvars
            for k, e in enumerate(m):
                new[perm[k]] = e
            out[tuple(new)] = c
        return MultiPoly._trusted(out, self._nvars)

    def substitute_zero(self, index: int) -> "MultiPoly":
        """Set variable ``index`` to 0."""
        return MultiPoly._trusted(
            {m: c for m, c in self._terms.items() if m[index] == 0}, self._nvars
        )

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self._nvars:
            raise ShapeError(f"point has {len(point)} coordinates, need {self._nvars}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for x, e in zip(pt, m):
                if e:
                    term *= x**e
            total += term
        return total

    def univariate_diagonal(self) -> dict[int, Fraction]:
        """Coefficients of p(a, a, ..., a) keyed by power of ``a``."""
        out: dict[int, Fraction] = {}
        for m, c in self._terms.items():
            d = sum(m)
            out[d] = out.get(d, 0) + c
        return {d: c for d, c in out.items() if c}

    def divmod_linear_sum(self) -> tuple["MultiPoly", "MultiPoly"]:
        """Divide by the sum of all variables.

        Division runs in lex order with the first variable leading, so the
        remainder is free of that variable; the polynomial is divisible iff
        the remainder is zero.
        """
        n = self._nvars
        rem = dict(self._terms)
        quot: Dict[Monomial, Fraction] = {}
        while True:
            lead = [m for m in rem if m[0] > 0]
            if not lead:
                break
            m = max(lead)
            c = rem[m]
            q = (m[0] - 1,) + m[1:]
            quot[q] = quot.get(q, 0) + c
            for j in range(n):
                t = list(q)
                t[j] += 1
                t = tuple(t)
                s = rem.get(t, 0) - c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return (
            MultiPoly._trusted({m: c for m, c in quot.items() if c}, n),
            MultiPoly._trusted(rem, n),
        )

    def __repr__(self) -> str:
        if not self._terms:
            return "MultiPoly(0)"
        parts = []
        for m, c in self.items():
            factors = [
                VARIABLE_NAMES[k] + (f"^{e}" if e > 1 else "")
                for k, e in enumerate(m)
                if e
            ]
            parts.append("*".join([str(c)] + factors))
        return "MultiPoly(" + " + ".join(parts) + ")"


def poly_arith(kind: str, p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact ``add``, ``sub`` or ``mul`` of two polynomials of equal shape."""
    if p.nvars != q.nvars:
        raise ShapeError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {kind!r}")


def shift_substitute(p: MultiPoly, offsets: Sequence[int]) -> MultiPoly:
    """Return ``p`` with each variable ``v`` replaced by ``v + offset``."""
    if len(offsets) != p.nvars:
        raise ShapeError(f"{len(offsets)} offsets for {p.nvars} variables")
    n = p.nvars
    out: Dict[Monomial, Fraction] = {}
    for mono, coeff in p._terms.items():
        factors = [_binomial_shift(e, o) for e, o in zip(mono, offsets)]
        for combo in product(*factors):
            m = tuple(k for k, _ in combo)
            w = 1
            for _, b in combo:
                w *= b
            out[m] = out.get(m, 0) + coeff * w
    return MultiPoly._trusted({m: c for m, c in out.items() if c}, n)


def symmetrize_orbit(mono: Monomial) -> list[Monomial]:
    """Distinct permutations of an exponent tuple, in canonical order."""
    from itertools import permutations

    return sorted(set(permutations(mono)), key=monomial_key)


def from_terms(terms: Iterable[tuple[Scalar, Sequence[int]]], nvars: int) -> MultiPoly:
    """Build a polynomial from (coefficient, exponents) pairs, collecting
    like terms."""
    acc: Dict[Monomial, Fraction] = {}
    for coeff, mono in terms:
        mono = tuple(mono)
        acc[mono] = acc.get(mono, 0) + Fraction(coeff)
    return MultiPoly(acc, nvars)
