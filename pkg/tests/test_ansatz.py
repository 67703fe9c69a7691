from fractions import Fraction
from itertools import permutations

import pytest

from ruinmoments.ansatz import (
    RecurrenceSpec,
    assemble_recurrence_system,
    build_basis,
    derive_binomial_moments,
    verify_residual,
)
from ruinmoments.errors import DerivationError, ShapeError, UnsupportedConfigurationError
from ruinmoments.formula import RationalFormula, evaluate_formula
from ruinmoments.linalg import solve_exact_linear
from ruinmoments.poly import MultiPoly
from ruinmoments.transforms import binomial_to_raw, raw_to_central

A2, B2 = MultiPoly.variables(2)
A3, B3, C3 = MultiPoly.variables(3)
ONE2 = RationalFormula.constant(1, 2)
ONE3 = RationalFormula.constant(1, 3)
ENGEL = RationalFormula(3 * A3 * B3 * C3, 1)


def test_recurrence_spec():
    two, three = RecurrenceSpec.for_players(2), RecurrenceSpec.for_players(3)
    assert two.weight == Fraction(1, 2) and len(two.transfers) == 2
    assert three.weight == Fraction(1, 6) and len(three.transfers) == 6
    with pytest.raises(ShapeError):
        RecurrenceSpec(2, ((1, 1), (-1, 1)), Fraction(1, 2))
    with pytest.raises(UnsupportedConfigurationError):
        RecurrenceSpec.for_players(4)


def test_build_basis():
    assert build_basis(2, 1).monomials == ((0, 0),)
    assert build_basis(3, 1).monomials == ((0, 0, 0),)
    assert build_basis(2, 2).monomials == ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))
    assert build_basis(2, 0).monomials == ()
    from math import comb

    for i in range(1, 6):
        assert len(build_basis(2, i).monomials) == comb(2 * i, 2)
        assert len(build_basis(3, i).monomials) == comb(2 * i + 1, 3)
    with pytest.raises(UnsupportedConfigurationError):
        build_basis(4, 1)


def test_two_player_order_one_system():
    # f_1 = k*A*B: residual collapses to the single row k - 1 = 0
    matrix, rhs = assemble_recurrence_system(RecurrenceSpec.for_players(2), build_basis(2, 1), ONE2)
    assert matrix == [[1]] and rhs == [1]


def test_engel_constant():
    spec = RecurrenceSpec.for_players(3)
    basis = build_basis(3, 1)
    matrix, rhs = assemble_recurrence_system(spec, basis, ONE3)
    rep = solve_exact_linear(matrix, rhs)
    assert rep.status == "unique" and rep.solution == (3,)
    assert basis.formula(rep.solution) == ENGEL


def test_two_player_order_two_gives_variance():
    res = derive_binomial_moments(2, 2)
    central = raw_to_central(binomial_to_raw(res.binomial_moments))
    assert central[2] == RationalFormula(A2 * B2 * (A2**2 + B2**2 - 2) * Fraction(1, 3))


def test_classics():
    assert derive_binomial_moments(2, 1).binomial_moments.formulas == (ONE2, RationalFormula(A2 * B2))
    assert derive_binomial_moments(3, 1).binomial_moments.formulas == (ONE3, ENGEL)
    assert derive_binomial_moments(3, 0).binomial_moments.formulas == (ONE3,)


def test_three_player_variance():
    central = raw_to_central(binomial_to_raw(derive_binomial_moments(3, 2).binomial_moments))
    blt = RationalFormula(
        Fraction(3, 2) * A3 * B3 * C3
        * (A3**2 * B3 + A3**2 * C3 + A3 * B3**2 - 3 * A3 * B3 * C3 + A3 * C3**2 + B3**2 * C3 + B3 * C3**2 - A3 - B3 - C3),
        2,
    )
    assert central[2] == blt


def test_verify_residual_examples():
    spec2, spec3 = RecurrenceSpec.for_players(2), RecurrenceSpec.for_players(3)
    assert verify_residual(spec3, ENGEL, ONE3).is_zero()
    assert verify_residual(spec2, RationalFormula(2 * A2 * B2), ONE2) == MultiPoly.constant(1, 2)
    fs = derive_binomial_moments(2, 4).binomial_moments
    assert verify_residual(spec2, fs[4], fs[3]).is_zero()
    # a perturbed candidate is rejected
    assert not verify_residual(spec2, fs[4] + RationalFormula(A2 * B2), fs[3]).is_zero()


def test_failure_is_reported(monkeypatch):
    import ruinmoments.ansatz as ansatz

    real = ansatz.build_basis

    def too_small(players, order, symmetric=False):
        basis = real(players, order, symmetric)
        if order < 2:
            return basis
        return type(basis)(players, order, basis.monomials[-1:], basis.generators[-1:], symmetric)

    ansatz._derive_order.cache_clear()
    monkeypatch.setattr(ansatz, "build_basis", too_small)
    try:
        with pytest.raises(DerivationError) as info:
            derive_binomial_moments(2, 2)
        assert info.value.report.status == "inconsistent"
        assert info.value.order == 2
    finally:
        ansatz._derive_order.cache_clear()


@pytest.fixture(scope="module")
def derived():
    return {2: derive_binomial_moments(2, 6), 3: derive_binomial_moments(3, 4)}


def test_full_rank(derived):
    for res in derived.values():
        assert res.system_ranks == res.unknown_counts


@pytest.mark.parametrize("players", [2, 3])
def test_symmetry(derived, players):
    for f in derived[players].binomial_moments.formulas:
        for perm in permutations(range(players)):
            assert f.permute(perm) == f


@pytest.mark.parametrize("players", [2, 3])
def test_boundary_conditions(derived, players):
    for i, f in derived[players].binomial_moments.items():
        if i == 0:
            assert f == 1
            continue
        for v in range(players):
            assert f.numerator.substitute_zero(v).is_zero()


@pytest.mark.parametrize("players", [2, 3])
def test_positive_inside(derived, players):
    from ruinmoments.oracle import _compositions

    # all-ones capitals end after exactly one round, so f_i = 0 there for i >= 2
    for total in range(players, 13):
        for caps in _compositions(total, players):
            for i, f in derived[players].binomial_moments.items():
                value = evaluate_formula(f, caps)
                if i >= 2 and set(caps) == {1}:
                    assert value == 0
                elif i:
                    assert value > 0


@pytest.mark.parametrize("players, order", [(2, 5), (3, 4)])
def test_symmetric_basis_agrees(derived, players, order):
    sym = derive_binomial_moments(players, order, symmetric=True)
    assert sym.binomial_moments.formulas == derived[players].binomial_moments.formulas[: order + 1]
    assert sym.unknown_counts[-1] < derived[players].unknown_counts[order - 1]
