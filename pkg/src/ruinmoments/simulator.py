"""Monte Carlo simulation of fair k-player gambler's ruin.

Random numbers come from numpy's PCG64.  Trial ``t`` of a run seeded with
``seed`` draws from its own substream, ``SeedSequence(seed, spawn_key=(t,))``,
so a trial's path depends only on (seed, t).  Each round consumes one raw
64-bit output ``u`` and maps it to an index in ``[0, n)`` as ``(u * n) >> 64``
with ``n = m(m-1)`` for ``m`` active players; index ``g*(m-1) + r`` selects
giver ``g`` and the ``r``-th other active player as receiver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Sequence

import numpy as np

from .errors import DomainError

FIRST_RUIN = "first-ruin"
LAST_SURVIVOR = "last-survivor"
STOP_RULES = (FIRST_RUIN, LAST_SURVIVOR)

_BLOCK = 64
_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class GameConfig:
    capitals: tuple[int, ...]
    stop_rule: str = FIRST_RUIN

    def __post_init__(self):
        object.__setattr__(self, "capitals", tuple(int(c) for c in self.capitals))
        if len(self.capitals) < 2:
            raise DomainError("a game needs at least two players")
        if any(c < 1 for c in self.capitals):
            raise DomainError(f"capitals must be positive, got {self.capitals}")
        if self.stop_rule not in STOP_RULES:
            raise DomainError(f"unknown stop rule {self.stop_rule!r}")

    @property
    def players(self) -> int:
        return len(self.capitals)


class TrialStream:
    """Buffered PCG64 substream for one trial."""

    __slots__ = ("_bitgen", "_buf", "_pos")

    def __init__(self, seed: int, trial: int):
        ss = np.random.SeedSequence(seed, spawn_key=(trial,))
        self._bitgen = np.random.PCG64(ss)
        self._buf: list[int] = []
        self._pos = 0

    def raw(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._bitgen.random_raw(_BLOCK).tolist()
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u

    def below(self, n: int) -> int:
        return (self.raw() * n) >> 64


def simulate_duration(config: GameConfig, rng: TrialStream) -> tuple[int, int, int | None]:
    """Play one game.

    Returns ``(duration, first_ruined, winner)``; ``winner`` is None when the
    game stops with more than one solvent player.
    """
    caps = list(config.capitals)
    total = sum(caps)
    active = list(range(len(caps)))
    first_ruined = None
    steps = 0
    while True:
        m = len(active)
        u = (rng.raw() * (m * (m - 1))) >> 64
        gi, r = divmod(u, m - 1)
        if r >= gi:
            r += 1
        giver, receiver = active[gi], active[r]
        caps[giver] -= 1
        caps[receiver] += 1
        steps += 1
        if caps[giver] == 0:
            if first_ruined is None:
                first_ruined = giver
            active.pop(gi)
            if len(active) == 1 or config.stop_rule == FIRST_RUIN:
                break
    assert sum(caps) == total
    winner = active[0] if len(active) == 1 else None
    return steps, first_ruined, winner


@dataclass(frozen=True)
class TrialStats:
    """Aggregate of a batch of simulated games.

    ``central_moments[r-1]`` is the biased sample central moment of order r
    (divisor ``trials``).  ``variance`` uses divisor ``trials - 1`` and
    ``standard_error`` is ``sqrt(variance / trials)``.  ``power_sums[j]`` is
    the exact sum of duration**j.
    """

    trials: int
    mean: float
    central_moments: tuple[float, ...]
    variance: float
    standard_error: float
    variance_standard_error: float
    seed: int
    stop_rule: str
    capitals: tuple[int, ...]
    first_ruin_counts: tuple[int, ...]
    win_counts: tuple[int, ...]
    power_sums: tuple[int, ...]

    def win_frequency(self, player: int) -> float:
        return self.win_counts[player] / self.trials


def _central_from_power_sums(sums: Sequence[int], n: int, order: int) -> Fraction:
    mean = Fraction(sums[1], n)
    acc = Fraction(0)
    for j in range(order + 1):
        acc += comb(order, j) * (-mean) ** (order - j) * Fraction(sums[j], n)
    return acc


def run_trials(config: GameConfig, trials: int, seed: int, max_moment_order: int = 4) -> TrialStats:
    """Simulate ``trials`` games; bit-reproducible for fixed arguments."""
    if trials < 1:
        raise DomainError("need at least one trial")
    if not 0 <= seed < _SEED_LIMIT:
        raise DomainError("seed must be an unsigned 64-bit integer")
    if max_moment_order < 1:
        raise DomainError("max_moment_order must be at least 1")
    top = max(max_moment_order, 4)
    sums = [0] * (top + 1)
    ruined = [0] * config.players
    wins = [0] * config.players
    for t in range(trials):
        d, first, winner = simulate_duration(config, TrialStream(seed, t))
        p = 1
        for j in range(top + 1):
            sums[j] += p
            p *= d
        ruined[first] += 1
        if winner is not None:
            wins[winner] += 1

    n = trials
    central = tuple(
        float(_central_from_power_sums(sums, n, r)) for r in range(1, max_moment_order + 1)
    )
    m2 = _central_from_power_sums(sums, n, 2)
    m4 = _central_from_power_sums(sums, n, 4)
    variance = m2 * n / (n - 1) if n > 1 else Fraction(0)
    return TrialStats(
        trials=n,
        mean=float(Fraction(sums[1], n)),
        central_moments=central,
        variance=float(variance),
        standard_error=sqrt(variance / n),
        variance_standard_error=sqrt(max(m4 - m2 * m2, 0) / n),
        seed=seed,
        stop_rule=config.stop_rule,
        capitals=config.capitals,
        first_ruin_counts=tuple(ruined),
        win_counts=tuple(wins),
        power_sums=tuple(sums),
    )


def ross_expectation(capitals: Sequence[int]) -> Fraction:
    """Expected rounds until a single player holds all the money."""
    caps = [int(c) for c in capitals]
    if len(caps) < 2 or any(c < 1 for c in caps):
        raise DomainError(f"need at least two positive capitals, got {tuple(caps)}")
    total = sum(caps)
    # sum_{i<j} a_i a_j = (S^2 - sum a_i^2) / 2
    return Fraction(total * total - sum(c * c for c in caps), 2)
