"""Plain-text and JSON forms of rational formulas.

Text grammar (as produced by :func:`render_canonical`)::

    1/3*A^3*B + 1/3*A*B^3 - 2/3*A*B
    3*A*B*C/(A+B+C)^1
    (1*A^2 + 1*B^2)/(A+B+C)^2

Terms follow graded lex order, every coefficient is printed (including 1),
and a multi-term numerator is parenthesised when a denominator follows.  The
parser is more forgiving: it accepts signed coefficients after an operator,
omitted coefficients, repeated monomials and an unparenthesised numerator,
and always returns the canonical formula.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import ParseError, ShapeError
from .formula import RationalFormula
from .poly import VARIABLE_NAMES, MultiPoly, from_terms
from .transforms import KINDS

SCHEMA_VERSION = 1


# -- text ---------------------------------------------------------------------


def _render_term(coeff: Fraction, mono) -> str:
    parts = [str(coeff)]
    for name, e in zip(VARIABLE_NAMES, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_polynomial(p: MultiPoly) -> str:
    items = p.items()
    if not items:
        return "0"
    out = []
    for k, (mono, coeff) in enumerate(items):
        body = _render_term(abs(coeff), mono)
        if k == 0:
            out.append(body if coeff > 0 else "-" + body)
        else:
            out.append((" + " if coeff > 0 else " - ") + body)
    return "".join(out)


def denominator_text(nvars: int) -> str:
    return "(" + "+".join(VARIABLE_NAMES[:nvars]) + ")"


def render_canonical(f: RationalFormula) -> str:
    """Deterministic text for a formula."""
    num = render_polynomial(f.numerator)
    if f.denominator_power == 0:
        return num
    if len(f.numerator) > 1:
        num = f"({num})"
    return f"{num}/{denominator_text(f.nvars)}^{f.denominator_power}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([ABC])|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1):
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("var", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.max_var = -1

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def at_op(self, value: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok[0] == "op" and tok[1] == value

    def formula(self):
        if self.at_op("("):
            self.next()
            terms = self.sum()
            self.expect("op", ")")
        else:
            terms = self.sum()
        nvars = None
        power = 0
        if self.at_op("/"):
            self.next()
            nvars = self.denominator()
            power = 1
            if self.at_op("^"):
                self.next()
                power = int(self.expect("num")[1])
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return terms, nvars, power

    def denominator(self) -> int:
        self.expect("op", "(")
        names = [self.expect("var")[1]]
        while self.at_op("+"):
            self.next()
            names.append(self.expect("var")[1])
        close = self.expect("op", ")")
        if tuple(names) not in (VARIABLE_NAMES[:2], VARIABLE_NAMES[:3]):
            raise ParseError("denominator must be (A+B) or (A+B+C)", close[2])
        return len(names)

    def sum(self):
        terms = []
        sign = 1
        if self.at_op("-") or self.at_op("+"):
            sign = -1 if self.next()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.at_op("+") or self.at_op("-"):
            sign = -1 if self.next()[1] == "-" else 1
            while self.at_op("+") or self.at_op("-"):
                if self.next()[1] == "-":
                    sign = -sign
            terms.append(self.term(sign))
        return terms

    def term(self, sign: int):
        coeff = Fraction(sign)
        mono = [0, 0, 0]
        while True:
            tok = self.peek()
            if tok[0] == "num":
                self.next()
                value = Fraction(int(tok[1]))
                if self.at_op("/") and self.peek(1)[0] == "num":
                    self.next()
                    den = self.next()
                    if int(den[1]) == 0:
                        raise ParseError("zero denominator in coefficient", den[2])
                    value /= int(den[1])
                coeff *= value
            elif tok[0] == "var":
                self.next()
                k = VARIABLE_NAMES.index(tok[1])
                e = 1
                if self.at_op("^"):
                    self.next()
                    e = int(self.expect("num")[1])
                mono[k] += e
                self.max_var = max(self.max_var, k)
            else:
                raise ParseError(f"expected a coefficient or variable, found {tok[1] or 'end of input'!r}", tok[2])
            if self.at_op("*"):
                self.next()
                continue
            break
        return coeff, mono


def parse_canonical(text: str, nvars: int | None = None) -> RationalFormula:
    """Parse formula text into a canonical :class:`RationalFormula`.

    The variable count comes from the denominator when present, else from
    ``nvars``, else from the highest variable mentioned (at least 2).
    """
    parser = _Parser(text)
    terms, den_vars, power = parser.formula()
    if den_vars is not None:
        if nvars is not None and nvars != den_vars:
            raise ShapeError(f"denominator implies {den_vars} variables, caller asked for {nvars}")
        nvars = den_vars
    if nvars is None:
        nvars = max(2, parser.max_var + 1)
    if parser.max_var >= nvars:
        raise ShapeError(f"variable {VARIABLE_NAMES[parser.max_var]} used in a {nvars}-variable formula")
    poly = from_terms(((c, m[:nvars]) for c, m in terms), nvars)
    return RationalFormula(poly, power)


# -- JSON documents -----------------------------------------------------------

_COEFF = re.compile(r"-?\d+(?:/\d+)?")


def _coeff_text(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _coeff_value(text: str) -> Fraction:
    if not isinstance(text, str) or not _COEFF.fullmatch(text):
        raise ValueError(f"coefficient must be a 'p/q' string, got {text!r}")
    return Fraction(text)


@dataclass(frozen=True)
class FormulaDocument:
    players: int
    kind: str
    order: int
    numerator_terms: tuple[tuple[str, tuple[int, ...]], ...]
    denominator_power: int
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_formula(cls, f: RationalFormula, kind: str, order: int) -> "FormulaDocument":
        terms = tuple((_coeff_text(c), tuple(m)) for m, c in f.numerator.items())
        return cls(f.nvars, kind, order, terms, f.denominator_power)

    def to_formula(self) -> RationalFormula:
        poly = from_terms(((_coeff_value(c), m) for c, m in self.numerator_terms), self.players)
        return RationalFormula(poly, self.denominator_power)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "players": self.players,
            "kind": self.kind,
            "order": self.order,
            "numerator_terms": [[c, list(m)] for c, m in self.numerator_terms],
            "denominator_power": self.denominator_power,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FormulaDocument":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {version!r}")
        players = int(data["players"])
        kind = data["kind"]
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        terms = []
        for entry in data["numerator_terms"]:
            coeff, mono = entry
            mono = tuple(int(e) for e in mono)
            if len(mono) != players or any(e < 0 for e in mono):
                raise ShapeError(f"exponent vector {mono} does not fit {players} players")
            _coeff_value(coeff)
            terms.append((coeff, mono))
        return cls(players, kind, int(data["order"]), tuple(terms), int(data["denominator_power"]))

    def is_canonical(self) -> bool:
        return FormulaDocument.from_formula(self.to_formula(), self.kind, self.order) == self


def dumps_documents(docs: Iterable[FormulaDocument]) -> str:
    return json.dumps([d.to_dict() for d in docs], indent=1) + "\n"


def load_documents(path: str | Path) -> list[FormulaDocument]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("a fixture file holds a JSON array of formula documents")
    return [FormulaDocument.from_dict(d) for d in data]
