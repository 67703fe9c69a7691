import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from ruinmoments.errors import ParseError, ShapeError
from ruinmoments.formula import RationalFormula
from ruinmoments.poly import MultiPoly
from ruinmoments.serialization import (
    FormulaDocument,
    dumps_documents,
    load_documents,
    parse_canonical,
    render_canonical,
)

from conftest import polys

A2, B2 = MultiPoly.variables(2)
A3, B3, C3 = MultiPoly.variables(3)


def test_render_examples():
    assert render_canonical(RationalFormula(A2 * B2)) == "1*A*B"
    m2 = RationalFormula(A2 * B2 * (A2**2 + B2**2 - 2) * Fraction(1, 3))
    assert render_canonical(m2) == "1/3*A^3*B + 1/3*A*B^3 - 2/3*A*B"
    assert render_canonical(RationalFormula(3 * A3 * B3 * C3, 1)) == "3*A*B*C/(A+B+C)^1"
    assert render_canonical(RationalFormula(MultiPoly.zero(2))) == "0"
    assert render_canonical(RationalFormula(-A2 + 1)) == "-1*A + 1"
    assert render_canonical(RationalFormula(A3 * A3 + B3, 2)) == "(1*A^2 + 1*B)/(A+B+C)^2"


def test_parse_examples():
    assert parse_canonical("1*A*B") == RationalFormula(A2 * B2)
    assert parse_canonical("3*A*B*C/(A+B+C)^1") == RationalFormula(3 * A3 * B3 * C3, 1)
    assert render_canonical(parse_canonical("2*A + -1*A")) == "1*A"
    assert parse_canonical("A*B - A*B", nvars=3).is_zero()
    assert parse_canonical("1/3*A^3*B + 1/3*A*B^3 - 2/3*A*B").numerator.coefficient((1, 1)) == Fraction(-2, 3)
    assert parse_canonical("A^2*B + C/(A+B+C)") == RationalFormula(A3**2 * B3 + C3, 1)
    assert parse_canonical("(A^2*B + C)/(A+B+C)") == RationalFormula(A3**2 * B3 + C3, 1)


def test_parse_canonicalises_denominator():
    f = parse_canonical("(1*A^2 + 1*A*B + 1*A*C)/(A+B+C)^1")
    assert f == RationalFormula(A3)
    assert f.denominator_power == 0


@pytest.mark.parametrize(
    "text, position",
    [("1*A*", 4), ("1 $ A", 2), ("1*A/(A+C)^1", 8), ("1*A)", 3), ("", 0), ("1/0*A", 2)],
)
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_canonical(text)
    assert info.value.position == position


def test_shape_errors():
    with pytest.raises(ShapeError):
        parse_canonical("1*C", nvars=2)
    with pytest.raises(ShapeError):
        parse_canonical("1*A/(A+B)^1", nvars=3)


formulas = st.builds(
    lambda p, k: RationalFormula(p, k), polys(max_degree=4, max_terms=6), st.integers(0, 3)
)


@given(formulas)
def test_text_round_trip(f):
    assert parse_canonical(render_canonical(f), nvars=f.nvars) == f


@given(formulas, st.sampled_from(["binomial", "raw", "central"]), st.integers(0, 9))
def test_document_round_trip(f, kind, order):
    doc = FormulaDocument.from_formula(f, kind, order)
    again = FormulaDocument.from_dict(json.loads(json.dumps(doc.to_dict())))
    assert again == doc and again.to_formula() == f and again.is_canonical()


def test_coefficients_are_strings():
    doc = FormulaDocument.from_formula(RationalFormula(A2 * Fraction(-7, 3) + 2), "raw", 1)
    data = doc.to_dict()
    assert data["numerator_terms"] == [["-7/3", [1, 0]], ["2/1", [0, 0]]]
    assert data["schema_version"] == 1
    bad = dict(data, numerator_terms=[[0.5, [1, 0]]])
    with pytest.raises(ValueError):
        FormulaDocument.from_dict(bad)
    with pytest.raises(ValueError):
        FormulaDocument.from_dict(dict(data, schema_version=2))


def test_shipped_fixtures_parse_and_are_canonical(tmp_path):
    path = resources.files("ruinmoments") / "fixtures" / "published_formulas.json"
    docs = load_documents(path)
    assert [(d.players, d.kind, d.order) for d in docs] == [
        (2, "raw", 1), (2, "central", 2), (2, "central", 3), (2, "central", 4),
        (2, "central", 5), (2, "central", 6),
        (3, "raw", 1), (3, "central", 2), (3, "central", 3), (3, "central", 4),
    ]
    assert all(d.is_canonical() for d in docs)
    out = tmp_path / "copy.json"
    out.write_text(dumps_documents(docs))
    assert load_documents(out) == docs


def test_fixture_spot_values():
    path = resources.files("ruinmoments") / "fixtures" / "published_formulas.json"
    docs = {(d.players, d.kind, d.order): d.to_formula() for d in load_documents(path)}
    # 2-player m_3 = AB(3A^4 + 10A^2B^2 + 3B^4 - 10A^2 - 10B^2 + 4)/15
    assert docs[2, "central", 3].numerator.coefficient((5, 1)) == Fraction(3, 15)
    assert docs[2, "central", 3].numerator.coefficient((1, 1)) == Fraction(4, 15)
    # 3-player m_4: constant term of the bracket 16A^3 -> 3*16/280 at A^4BC
    m4 = docs[3, "central", 4]
    assert m4.denominator_power == 4
    assert m4.numerator.coefficient((4, 1, 1)) == Fraction(3 * 16, 280)
