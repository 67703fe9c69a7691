"""Symbolic derivation of binomial moments of the duration.

With D the duration until some player is ruined, ``f_i = E[C(D, i)]``
satisfies, at every interior capital vector x,

    f_i(x) - w * sum_t f_i(x + t) = w * sum_t f_{i-1}(x + t),

where t runs over the transfer vectors (one player gives a dollar to
another) and w = 1 / (number of transfers).  ``f_0 = 1`` and ``f_i``
vanishes whenever a capital is 0.

The ansatz writes ``f_i = P * q / S^c`` with ``P = A*B`` (2 players) or
``A*B*C`` (3 players), ``S`` the total capital (c = 0 or 1) and ``q`` an
unknown polynomial of degree 2i - 2.  Multiplying the recurrence through by
a power of ``S`` (which every transfer preserves) and equating each monomial
coefficient of the residual to zero gives a linear system for ``q``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .errors import DerivationError, ShapeError, UnsupportedConfigurationError
from .formula import RationalFormula
from .linalg import SolutionReport, solve_sparse
from .poly import Monomial, MultiPoly, monomial_key, monomials_up_to
from .transforms import BINOMIAL, MomentSet

log = logging.getLogger(__name__)

SUPPORTED_PLAYERS = (2, 3)


def _check_players(players: int) -> None:
    if players not in SUPPORTED_PLAYERS:
        raise UnsupportedConfigurationError(
            f"no polynomial ansatz for {players} players: the method is known to "
            "break down beyond three players (only 2 and 3 are supported)"
        )


def transfer_vectors(players: int) -> tuple[tuple[int, ...], ...]:
    """Offset vectors for every ordered (giver, receiver) pair, giver-major."""
    out = []
    for g in range(players):
        for r in range(players):
            if g != r:
                v = [0] * players
                v[g] -= 1
                v[r] += 1
                out.append(tuple(v))
    return tuple(out)


@dataclass(frozen=True)
class RecurrenceSpec:
    players: int
    transfers: tuple[tuple[int, ...], ...]
    weight: Fraction

    def __post_init__(self):
        for t in self.transfers:
            if len(t) != self.players or sorted(t) != [-1] + [0] * (self.players - 2) + [1]:
                raise ShapeError(f"{t} is not a single-dollar transfer")
        if self.weight * len(self.transfers) != 1:
            raise ShapeError("transfer weights must sum to 1")

    @classmethod
    def for_players(cls, players: int) -> "RecurrenceSpec":
        _check_players(players)
        ts = transfer_vectors(players)
        return cls(players, ts, Fraction(1, len(ts)))

    def average_shift(self, p: MultiPoly) -> MultiPoly:
        """w * sum over transfers of p(x + t)."""
        acc = MultiPoly.zero(p.nvars)
        for t in self.transfers:
            acc = acc + p.shift(t)
        return acc * self.weight

    def laplacian(self, p: MultiPoly) -> MultiPoly:
        """p - w * sum_t p(x + t)."""
        return p - self.average_shift(p)


@dataclass(frozen=True)
class AnsatzBasis:
    """Basis for the reduced unknown ``q``.

    ``generators`` are the polynomials multiplying each unknown; with the
    symmetric option they are orbit sums, otherwise single monomials.
    """

    players: int
    order: int
    monomials: tuple[Monomial, ...]
    generators: tuple[MultiPoly, ...]
    symmetric: bool = False

    @property
    def prefactor(self) -> MultiPoly:
        return MultiPoly.monomial((1,) * self.players)

    @property
    def denominator_power(self) -> int:
        return 0 if self.players == 2 else 1

    def formula(self, coefficients: Sequence[Fraction]) -> RationalFormula:
        if len(coefficients) != len(self.generators):
            raise ShapeError("one coefficient per generator required")
        q = MultiPoly.zero(self.players)
        for c, g in zip(coefficients, self.generators):
            if c:
                q = q + g * c
        return RationalFormula(self.prefactor * q, self.denominator_power)


def build_basis(players: int, order: int, symmetric: bool = False) -> AnsatzBasis:
    """All monomials of degree <= 2*order - 2 for the cofactor ``q``."""
    _check_players(players)
    if order < 0:
        raise ValueError("order must be non-negative")
    if order == 0:
        return AnsatzBasis(players, 0, (), (), symmetric)
    monos = monomials_up_to(players, 2 * order - 2)
    if not symmetric:
        gens = tuple(MultiPoly.monomial(m) for m in monos)
        return AnsatzBasis(players, order, tuple(monos), gens, False)
    seen: set[Monomial] = set()
    gens = []
    for m in monos:
        if m in seen:
            continue
        orbit = set(permutations(m))
        seen |= orbit
        gens.append(MultiPoly({o: 1 for o in orbit}, players))
    return AnsatzBasis(players, order, tuple(monos), tuple(gens), True)


def _clearing_power(basis: AnsatzBasis, f_prev: RationalFormula) -> int:
    return max(basis.denominator_power, f_prev.denominator_power)


def _assemble(spec: RecurrenceSpec, basis: AnsatzBasis, f_prev: RationalFormula):
    """Residual coefficient rows: (row monomials, sparse rows, rhs)."""
    if spec.players != basis.players or f_prev.nvars != spec.players:
        raise ShapeError("recurrence, basis and previous moment disagree on player count")
    n = spec.players
    big_k = _clearing_power(basis, f_prev)
    s = MultiPoly.sum_of_variables(n)
    lhs_lift = s ** (big_k - basis.denominator_power)
    rhs_poly = spec.average_shift(f_prev.numerator) * s ** (big_k - f_prev.denominator_power)

    columns = []
    for g in basis.generators:
        columns.append(spec.laplacian(basis.prefactor * g) * lhs_lift)

    row_monos = set(rhs_poly.terms)
    for col in columns:
        row_monos.update(col.terms)
    ordered = sorted(row_monos, key=monomial_key)
    index = {m: r for r, m in enumerate(ordered)}
    rows: list[dict[int, Fraction]] = [{} for _ in ordered]
    for j, col in enumerate(columns):
        for m, c in col.terms.items():
            rows[index[m]][j] = c
    rhs = [rhs_poly.coefficient(m) for m in ordered]
    return ordered, rows, rhs


def assemble_recurrence_system(
    spec: RecurrenceSpec, basis: AnsatzBasis, f_prev: RationalFormula
) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Dense coefficient-comparison system ``matrix @ coeffs = rhs``.

    One row per monomial of the residual (canonical order), one column per
    basis generator.
    """
    _, rows, rhs = _assemble(spec, basis, f_prev)
    ncols = len(basis.generators)
    dense = [[row.get(j, Fraction(0)) for j in range(ncols)] for row in rows]
    return dense, rhs


def verify_residual(
    spec: RecurrenceSpec, f_i: RationalFormula, f_prev: RationalFormula
) -> MultiPoly:
    """Residual of the recurrence for a candidate ``f_i``, cleared of
    denominators.  Zero certifies the candidate."""
    if f_i.nvars != spec.players or f_prev.nvars != spec.players:
        raise ShapeError("formula variable count does not match the recurrence")
    s = MultiPoly.sum_of_variables(spec.players)
    big_k = max(f_i.denominator_power, f_prev.denominator_power)
    lhs = spec.laplacian(f_i.numerator) * s ** (big_k - f_i.denominator_power)
    rhs = spec.average_shift(f_prev.numerator) * s ** (big_k - f_prev.denominator_power)
    return lhs - rhs


@dataclass(frozen=True)
class DerivationResult:
    players: int
    max_order: int
    binomial_moments: MomentSet
    system_ranks: tuple[int, ...]
    unknown_counts: tuple[int, ...] = ()


@lru_cache(maxsize=None)
def _derive_order(players: int, order: int, symmetric: bool) -> tuple[RationalFormula, SolutionReport]:
    if order == 0:
        one = RationalFormula.constant(1, players)
        return one, SolutionReport((), 0, "unique", 0)
    f_prev, _ = _derive_order(players, order - 1, symmetric)
    spec = RecurrenceSpec.for_players(players)
    basis = build_basis(players, order, symmetric)
    _, rows, rhs = _assemble(spec, basis, f_prev)
    log.debug(
        "order %d: %d equations, %d unknowns", order, len(rows), len(basis.generators)
    )
    report = solve_sparse(rows, rhs, len(basis.generators))
    if not report.is_unique:
        raise DerivationError(
            f"{players}-player ansatz at order {order} is {report.status} "
            f"(rank {report.rank} of {report.unknowns})",
            report=report,
            order=order,
        )
    f_i = basis.formula(report.solution)
    if not verify_residual(spec, f_i, f_prev).is_zero():
        raise DerivationError(
            f"solution at order {order} fails the residual check", report=report, order=order
        )
    return f_i, report


def derive_binomial_moments(
    players: int, max_order: int, symmetric: bool = False
) -> DerivationResult:
    """Binomial moments ``f_0 .. f_I`` as exact formulas in the capitals.

    Raises :class:`DerivationError` if some order's system is not uniquely
    solvable.
    """
    _check_players(players)
    if max_order < 0:
        raise ValueError("max_order must be non-negative")
    formulas, ranks, unknowns = [], [], []
    for i in range(max_order + 1):
        f_i, report = _derive_order(players, i, symmetric)
        formulas.append(f_i)
        if i:
            ranks.append(report.rank)
            unknowns.append(report.unknowns)
    return DerivationResult(
        players,
        max_order,
        MomentSet(players, BINOMIAL, tuple(formulas)),
        tuple(ranks),
        tuple(unknowns),
    )
