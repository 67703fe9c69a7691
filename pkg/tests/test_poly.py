from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ruinmoments.errors import ShapeError
from ruinmoments.poly import MultiPoly, monomials_up_to, poly_arith, shift_substitute

from conftest import polys


def test_add_inverse_is_empty(A2):
    A, B = A2
    out = poly_arith("add", A * B, -(A * B))
    assert out.is_zero()
    assert out.terms == {}
    assert out.degree == -1


def test_difference_of_squares(A2):
    A, B = A2
    assert poly_arith("mul", A + B, A - B) == A**2 - B**2


def test_two_player_variance_expansion(A2):
    A, B = A2
    got = poly_arith("mul", A * B, A**2 + B**2 - 2) * Fraction(1, 3)
    assert got.terms == {
        (3, 1): Fraction(1, 3),
        (1, 3): Fraction(1, 3),
        (1, 1): Fraction(-2, 3),
    }


def test_shape_mismatch(A2, A3):
    with pytest.raises(ShapeError):
        poly_arith("add", A2[0], A3[0])
    with pytest.raises(ShapeError):
        A2[0] * A3[1]


def test_shift_examples(A2, A3):
    A, B = A2
    assert shift_substitute(A, (1, -1)) == A + 1
    assert shift_substitute(A * B, (1, -1)) == A * B - A + B - 1
    S = A3[0] + A3[1] + A3[2]
    assert shift_substitute(S, (1, -1, 0)) == S


def test_shift_wrong_length(A2):
    with pytest.raises(ShapeError):
        shift_substitute(A2[0], (1, -1, 0))


def test_canonical_order():
    p = MultiPoly({(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 1): 1, (2, 0, 0): 1, (0, 0, 1): 1}, 3)
    assert [m for m, _ in p.items()] == [(2, 0, 0), (0, 1, 1), (1, 0, 0), (0, 0, 1), (0, 0, 0)]


def test_monomial_count():
    assert len(monomials_up_to(2, 2)) == 6
    assert len(monomials_up_to(3, 4)) == 35
    assert monomials_up_to(2, -1) == []


def test_zero_coefficients_dropped():
    p = MultiPoly({(1, 0): 0, (0, 1): Fraction(2, 4)}, 2)
    assert p.terms == {(0, 1): Fraction(1, 2)}


def test_divide_by_sum(A3):
    A, B, C = A3
    S = A + B + C
    q, r = (A * B * C * S**2).divmod_linear_sum()
    assert r.is_zero() and q == A * B * C * S
    q, r = (A * B).divmod_linear_sum()
    assert not r.is_zero()
    assert q * S + r == A * B


@given(polys(nvars=3), polys(nvars=3), polys(nvars=3))
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p + q) + r == p + (q + r)


@given(polys(nvars=2), polys(nvars=2))
def test_degree_of_product(p, q):
    if p and q:
        assert (p * q).degree == p.degree + q.degree


offsets3 = st.tuples(*[st.integers(-3, 3)] * 3)


@given(polys(nvars=3), offsets3)
def test_shift_inverse_and_degree(p, delta):
    shifted = shift_substitute(p, delta)
    assert shift_substitute(shifted, tuple(-d for d in delta)) == p
    assert shifted.degree == p.degree


@pytest.mark.parametrize("n", [2, 3])
def test_transfers_fix_total(n):
    S = MultiPoly.sum_of_variables(n)
    for g in range(n):
        for r in range(n):
            if g != r:
                t = [0] * n
                t[g], t[r] = -1, 1
                assert shift_substitute(S, t) == S


@given(polys(nvars=3), polys(nvars=3), st.tuples(*[st.integers(-4, 4)] * 3))
@settings(max_examples=50)
def test_evaluation_is_multiplicative(p, q, point):
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)


def test_immutability_of_arguments(A2):
    A, B = A2
    p = A * B + 1
    before = p.terms
    _ = p * p + shift_substitute(p, (1, -1))
    assert p.terms == before
