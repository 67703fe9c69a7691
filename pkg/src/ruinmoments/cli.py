"""Command-line front end.

Exit codes: 0 success, 1 mismatch or derivation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .ansatz import derive_binomial_moments
from .errors import DerivationError, RuinMomentsError
from .formula import RationalFormula
from .oracle import oracle_binomial_moments
from .serialization import FormulaDocument, dumps_documents, load_documents, render_canonical
from .simulator import STOP_RULES, GameConfig, run_trials
from .transforms import BINOMIAL, CENTRAL, KINDS, RAW, binomial_to_raw, raw_to_central, scaled_limit

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _players(text: str) -> int:
    value = int(text)
    if value not in (2, 3):
        raise argparse.ArgumentTypeError("players must be 2 or 3")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ruinmoments", description="Moments of the duration of fair gambler's ruin.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("derive", help="derive moment formulas symbolically")
    p.add_argument("--players", type=_players, required=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, default=BINOMIAL)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)
    p.add_argument("--symmetric", action="store_true", help="restrict the ansatz to symmetric polynomials")

    p = sub.add_parser("verify", help="re-derive formulas and compare them with a fixture file")
    p.add_argument("--players", type=_players, required=True)
    p.add_argument("--fixtures", type=Path, required=True)

    p = sub.add_parser("oracle", help="exact binomial moments and ruin probabilities at fixed capitals")
    p.add_argument("--capitals", type=_int_list, required=True)
    p.add_argument("--max-order", type=int, required=True)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the duration")
    p.add_argument("--capitals", type=_int_list, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stop-rule", choices=STOP_RULES, required=True)
    p.add_argument("--max-moment-order", type=int, default=4)

    p = sub.add_parser("limits", help="limits of scaled central moments at equal capitals")
    p.add_argument("--players", type=_players, required=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--digits", type=int, default=20)
    return parser


def moment_sets(players: int, max_order: int, symmetric: bool = False):
    binomial = derive_binomial_moments(players, max_order, symmetric).binomial_moments
    if max_order < 1:
        return binomial, None, None
    raw = binomial_to_raw(binomial)
    return binomial, raw, raw_to_central(raw)


def derived_documents(players: int, max_order: int, kind: str, symmetric: bool = False):
    """(label, formula, document) triples in output order."""
    binomial, raw, central = moment_sets(players, max_order, symmetric)
    out: list[tuple[str, RationalFormula, FormulaDocument]] = []

    def add(label: str, f: RationalFormula, k: str, order: int):
        out.append((label, f, FormulaDocument.from_formula(f, k, order)))

    if kind == BINOMIAL:
        for i in range(1, max_order + 1):
            add(f"f_{i}", binomial[i], BINOMIAL, i)
    elif kind == RAW:
        for i in range(1, max_order + 1):
            add("E[D]" if i == 1 else f"E[D^{i}]", raw[i], RAW, i)
    else:
        if central is not None:
            add("E[D]", central.mean, RAW, 1)
            for i in range(2, max_order + 1):
                add(f"m_{i}", central[i], CENTRAL, i)
    return out


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _cmd_derive(args) -> int:
    if args.max_order < 1:
        raise _UsageError("--max-order must be at least 1")
    docs = derived_documents(args.players, args.max_order, args.kind, args.symmetric)
    if args.format == "json":
        text = dumps_documents(d for _, _, d in docs)
    else:
        text = "".join(f"{label} = {render_canonical(f)}\n" for label, f, _ in docs)
    _emit(text, args.out)
    return EXIT_OK


def _label(doc: FormulaDocument) -> str:
    if doc.kind == BINOMIAL:
        return f"f_{doc.order}"
    if doc.kind == RAW:
        return "E[D]" if doc.order == 1 else f"E[D^{doc.order}]"
    return f"m_{doc.order}"


def _cmd_verify(args) -> int:
    try:
        docs = [d for d in load_documents(args.fixtures) if d.players == args.players]
    except (OSError, ValueError) as exc:
        raise _UsageError(f"cannot read fixtures: {exc}")
    if not docs:
        print(f"no {args.players}-player entries in {args.fixtures}", file=sys.stderr)
        return EXIT_MISMATCH
    top = max(d.order for d in docs)
    binomial, raw, central = moment_sets(args.players, max(top, 1))
    failures = 0
    for doc in docs:
        expected = doc.to_formula()
        if doc.kind == BINOMIAL:
            got = binomial[doc.order]
        elif doc.kind == RAW:
            got = raw[doc.order]
        else:
            got = central[doc.order]
        ok = got == expected
        failures += not ok
        print(f"{'match' if ok else 'MISMATCH'} {_label(doc)}")
    print(f"{len(docs) - failures}/{len(docs)} fixtures match")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def _cmd_oracle(args) -> int:
    if args.max_order < 0:
        raise _UsageError("--max-order must be non-negative")
    result = oracle_binomial_moments(args.capitals, args.max_order)
    for i in range(1, args.max_order + 1):
        print(f"f_{i} = {result.binomial_moments[i]}")
    for p, prob in enumerate(result.first_ruin_probabilities, start=1):
        print(f"first_ruin_{p} = {prob}")
    if len(args.capitals) == 2:
        for p, prob in enumerate(reversed(result.first_ruin_probabilities), start=1):
            print(f"win_{p} = {prob}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = GameConfig(tuple(args.capitals), args.stop_rule)
    stats = run_trials(config, args.trials, args.seed, args.max_moment_order)
    print(f"capitals = {','.join(map(str, stats.capitals))}")
    print(f"stop_rule = {stats.stop_rule}")
    print(f"trials = {stats.trials}")
    print(f"seed = {stats.seed}")
    print(f"mean = {stats.mean!r}")
    print(f"standard_error = {stats.standard_error!r}")
    print(f"variance = {stats.variance!r}")
    for r, m in enumerate(stats.central_moments, start=1):
        print(f"m_{r} = {m!r}")
    print(f"first_ruin_counts = {','.join(map(str, stats.first_ruin_counts))}")
    print(f"win_counts = {','.join(map(str, stats.win_counts))}")
    return EXIT_OK


def _cmd_limits(args) -> int:
    if args.max_order < 3:
        raise _UsageError("--max-order must be at least 3")
    if args.digits < 1:
        raise _UsageError("--digits must be positive")
    _, _, central = moment_sets(args.players, args.max_order)
    for i in range(3, args.max_order + 1):
        lim = scaled_limit(central, i, args.digits)
        print(f"L_{i}^2 = {lim.squared_value}")
        if lim.exact is not None:
            print(f"L_{i} = {lim.exact}")
        print(f"L_{i} ~ {lim.decimal}")
    return EXIT_OK


_COMMANDS = {
    "derive": _cmd_derive,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "simulate": _cmd_simulate,
    "limits": _cmd_limits,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except DerivationError as exc:
        print(f"derivation failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except RuinMomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
