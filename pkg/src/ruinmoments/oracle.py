"""Exact numeric ground truth on the finite absorbing chain.

For a fixed total capital N the interior states (every capital >= 1) form a
finite transient class.  Binomial moments of the duration and first-ruin
probabilities both solve ``(I - w * Adj) v = rhs`` on the interior, so one
elimination of that matrix serves every order and every player.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .ansatz import transfer_vectors
from .errors import DomainError
from .linalg import ExactLU

State = tuple[int, ...]


@dataclass(frozen=True)
class StateSpace:
    players: int
    total: int
    states: tuple[State, ...]
    index: dict

    def __len__(self) -> int:
        return len(self.states)

    @property
    def expected_size(self) -> int:
        return comb(self.total - 1, self.players - 1)


def _compositions(total: int, parts: int) -> list[State]:
    if parts == 1:
        return [(total,)] if total >= 1 else []
    out = []
    for first in range(1, total - parts + 2):
        out.extend((first,) + rest for rest in _compositions(total - first, parts - 1))
    return out


def enumerate_interior_states(players: int, total: int) -> StateSpace:
    """Capital vectors with every entry >= 1 summing to ``total``, in
    lexicographic order."""
    if players < 2:
        raise DomainError("need at least two players")
    if total < players:
        raise DomainError(f"total {total} leaves no interior state for {players} players")
    states = tuple(_compositions(total, players))
    return StateSpace(players, total, states, {s: k for k, s in enumerate(states)})


class _Chain:
    """Interior matrix of one (players, total) chain, factored once."""

    def __init__(self, players: int, total: int):
        self.space = enumerate_interior_states(players, total)
        self.transfers = transfer_vectors(players)
        self.weight = Fraction(1, len(self.transfers))
        n = len(self.space)
        matrix = [[Fraction(0)] * n for _ in range(n)]
        # neighbours[k]: list of (interior index or None, neighbour state)
        self.neighbours = []
        for k, s in enumerate(self.space.states):
            matrix[k][k] += 1
            nb = []
            for t in self.transfers:
                y = tuple(a + b for a, b in zip(s, t))
                j = self.space.index.get(y)
                if j is not None:
                    matrix[k][j] -= self.weight
                nb.append((j, y))
            self.neighbours.append(nb)
        self.lu = ExactLU(matrix)

    def binomial_moments(self, max_order: int) -> list[list[Fraction]]:
        """``moments[i][k]`` = E[C(D, i)] from interior state ``k``."""
        n = len(self.space)
        moments = [[Fraction(1)] * n]
        for i in range(1, max_order + 1):
            prev = moments[-1]
            rhs = []
            for nb in self.neighbours:
                acc = Fraction(0)
                for j, _ in nb:
                    if j is not None:
                        acc += prev[j]
                    elif i == 1:
                        acc += 1  # f_0 = 1 on absorbing states
                rhs.append(acc * self.weight)
            moments.append(self.lu.solve(rhs))
        return moments

    def first_ruin(self) -> list[list[Fraction]]:
        """``probs[p][k]`` = P(player p is ruined first | start at state k)."""
        out = []
        for p in range(self.space.players):
            rhs = []
            for nb in self.neighbours:
                hits = sum(1 for j, y in nb if j is None and y[p] == 0)
                rhs.append(hits * self.weight)
            out.append(self.lu.solve(rhs))
        return out


@lru_cache(maxsize=64)
def _chain(players: int, total: int) -> _Chain:
    return _Chain(players, total)


@lru_cache(maxsize=64)
def _chain_moments(players: int, total: int, max_order: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(r) for r in _chain(players, total).binomial_moments(max_order))


@lru_cache(maxsize=64)
def _chain_ruin(players: int, total: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(r) for r in _chain(players, total).first_ruin())


def _validate(capitals: Sequence[int]) -> State:
    caps = tuple(int(c) for c in capitals)
    if len(caps) not in (2, 3):
        raise DomainError(f"the exact oracle handles 2 or 3 players, got {len(caps)}")
    if any(c <= 0 for c in caps):
        raise DomainError(f"capitals must be positive, got {caps}")
    return caps


@dataclass(frozen=True)
class OracleResult:
    capitals: State
    binomial_moments: tuple[Fraction, ...]
    first_ruin_probabilities: tuple[Fraction, ...]


def chain_binomial_moments(players: int, total: int, max_order: int) -> dict[State, tuple[Fraction, ...]]:
    """Binomial moments 0..max_order at every interior state of one chain."""
    space = enumerate_interior_states(players, total)
    table = _chain_moments(players, total, max_order)
    return {s: tuple(table[i][k] for i in range(max_order + 1)) for k, s in enumerate(space.states)}


def oracle_binomial_moments(capitals: Sequence[int], max_order: int) -> OracleResult:
    caps = _validate(capitals)
    if max_order < 0:
        raise DomainError("max_order must be non-negative")
    players, total = len(caps), sum(caps)
    k = _chain(players, total).space.index[caps]
    moments = _chain_moments(players, total, max_order)
    ruin = _chain_ruin(players, total)
    return OracleResult(
        caps,
        tuple(moments[i][k] for i in range(max_order + 1)),
        tuple(ruin[p][k] for p in range(players)),
    )


def oracle_first_ruin_probabilities(capitals: Sequence[int]) -> tuple[Fraction, ...]:
    """Exact probability, per player, of being the first to go broke."""
    caps = _validate(capitals)
    players, total = len(caps), sum(caps)
    k = _chain(players, total).space.index[caps]
    ruin = _chain_ruin(players, total)
    return tuple(ruin[p][k] for p in range(players))
