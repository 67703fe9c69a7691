"""Exact Gaussian elimination over the rationals.

Rows are held sparsely (column -> Fraction) because the systems produced by
coefficient comparison are far from dense.  Pivoting takes the first row
with a nonzero entry in the current column, and pivots are normalised to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ShapeError

UNIQUE = "unique"
UNDERDETERMINED = "underdetermined"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolutionReport:
    solution: tuple[Fraction, ...] | None
    rank: int
    status: str
    unknowns: int

    @property
    def is_unique(self) -> bool:
        return self.status == UNIQUE


def _sparse_rows(matrix: Sequence[Sequence], ncols: int) -> list[dict[int, Fraction]]:
    rows = []
    for r, row in enumerate(matrix):
        if len(row) != ncols:
            raise ShapeError(f"row {r} has {len(row)} entries, expected {ncols}")
        rows.append({c: Fraction(v) for c, v in enumerate(row) if v})
    return rows


def solve_sparse(
    rows: list[dict[int, Fraction]], rhs: Sequence, ncols: int
) -> SolutionReport:
    """Solve a system given as sparse rows.  ``rows`` is consumed."""
    if len(rhs) != len(rows):
        raise ShapeError(f"rhs has {len(rhs)} entries for {len(rows)} rows")
    # augmented column index ncols carries the right-hand side
    for row, b in zip(rows, rhs):
        b = Fraction(b)
        if b:
            row[ncols] = b
    pending = [row for row in rows if row]
    pivots: list[tuple[int, dict[int, Fraction]]] = []
    for col in range(ncols):
        idx = next((i for i, row in enumerate(pending) if col in row), None)
        if idx is None:
            continue
        prow = pending.pop(idx)
        inv = 1 / prow[col]
        if inv != 1:
            for c in prow:
                prow[c] *= inv
        pitems = list(prow.items())
        for row in pending:
            factor = row.get(col)
            if factor is None:
                continue
            for c, v in pitems:
                s = row.get(c, 0) - factor * v
                if s:
                    row[c] = s
                else:
                    del row[c]
        pending = [row for row in pending if row]
        pivots.append((col, prow))

    rank = len(pivots)
    # any surviving row is 0 = b with b != 0
    if pending:
        return SolutionReport(None, rank, INCONSISTENT, ncols)

    x = [Fraction(0)] * ncols
    for col, prow in reversed(pivots):
        s = prow.get(ncols, Fraction(0))
        for c, v in prow.items():
            if c != col and c != ncols:
                s -= v * x[c]
        x[col] = s
    status = UNIQUE if rank == ncols else UNDERDETERMINED
    return SolutionReport(tuple(x), rank, status, ncols)


def solve_exact_linear(matrix: Sequence[Sequence], rhs: Sequence) -> SolutionReport:
    """Solve ``matrix @ x = rhs`` exactly.

    Inconsistency and rank deficiency are reported through ``status``; an
    underdetermined system yields the particular solution with every free
    unknown set to zero.
    """
    if len(matrix) != len(rhs):
        raise ShapeError(f"rhs has {len(rhs)} entries for {len(matrix)} rows")
    ncols = len(matrix[0]) if matrix else 0
    return solve_sparse(_sparse_rows(matrix, ncols), rhs, ncols)


class ExactLU:
    """Row-reduced factorisation of a square nonsingular matrix.

    The elimination is recorded once so that a sequence of right-hand sides,
    each depending on the previous solution, can be solved without redoing it.
    """

    def __init__(self, matrix: Sequence[Sequence]):
        n = len(matrix)
        rows = _sparse_rows(matrix, n)
        order = list(range(n))  # original index of each remaining row
        self.n = n
        self._steps: list[tuple[int, Fraction, list[tuple[int, Fraction]]]] = []
        self._upper: list[tuple[int, int, dict[int, Fraction]]] = []
        pending = list(zip(order, rows))
        for col in range(n):
            idx = next((i for i, (_, row) in enumerate(pending) if col in row), None)
            if idx is None:
                raise ShapeError("matrix is singular")
            src, prow = pending.pop(idx)
            inv = 1 / prow[col]
            for c in prow:
                prow[c] *= inv
            targets = []
            for dst, row in pending:
                factor = row.get(col)
                if factor is None:
                    continue
                for c, v in prow.items():
                    s = row.get(c, 0) - factor * v
                    if s:
                        row[c] = s
                    else:
                        del row[c]
                targets.append((dst, factor))
            self._steps.append((src, inv, targets))
            self._upper.append((col, src, prow))

    def solve(self, rhs: Sequence) -> list[Fraction]:
        if len(rhs) != self.n:
            raise ShapeError(f"rhs has {len(rhs)} entries, expected {self.n}")
        b = [Fraction(v) for v in rhs]
        for src, inv, targets in self._steps:
            b[src] *= inv
            if b[src]:
                for dst, factor in targets:
                    b[dst] -= factor * b[src]
        x = [Fraction(0)] * self.n
        for col, src, prow in reversed(self._upper):
            s = b[src]
            for c, v in prow.items():
                if c != col:
                    s -= v * x[c]
            x[col] = s
        return x
