"""Monte Carlo play of the simultaneous-move game.

Strategy handles wrap everything a simulated player needs: given a position
and a 1-based round index they emit a distribution over legal moves, and can
sample from it with a caller-supplied RNG. Both sides draw from independent
RNG substreams, so neither side's draw can depend on the other's move in the
same round — the sampling order inside a round is immaterial.

Reproducibility: an episode seeded with ``seed`` builds
``numpy.random.SeedSequence(seed).spawn(2)`` and gives stream 0 to the cops
and stream 1 to the robber (PCG64 generators). ``estimate_value`` spawns one
child sequence per episode from the root seed, so batches are reproducible
and episodes independent.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .concurrent_game import (
    ConcurrentPosition,
    MixedStrategyTable,
    cccr_step,
    is_capture,
)
from .graph import Graph, GraphError
from .turn_based import (
    CopwinTable,
    extract_cop_strategy,
    extract_robber_strategy,
)


class StrategyError(GraphError):
    """A handle was queried at a position it cannot play from."""


class StrategyHandle:
    """Base: a side ('C' or 'R'), a kind tag, and a distribution per position.

    ``distribution(p, round_index)`` returns [(move, prob), ...] where a cop
    move is a K-tuple of labels and a robber move is a label. At captured
    positions every handle emits "stay" with probability 1.
    """

    kind = "abstract"

    def __init__(self, side: str):
        if side not in ("C", "R"):
            raise GraphError(f"side must be 'C' or 'R', got {side!r}")
        self.side = side

    def _stay(self, p: ConcurrentPosition):
        cops, robber = p
        return [(tuple(cops), 1.0)] if self.side == "C" else [(robber, 1.0)]

    def distribution(self, p: ConcurrentPosition, round_index: int = 1):
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, p: ConcurrentPosition,
               round_index: int = 1):
        dist = self.distribution(p, round_index)
        if len(dist) == 1:
            return dist[0][0]
        cum = []
        total = 0.0
        for _, prob in dist:
            total += prob
            cum.append(total)
        r = rng.random() * total
        return dist[bisect_left(cum, r)][0]


class MixedTableStrategy(StrategyHandle):
    """Plays the stationary mixes stored in a solved strategy table.

    ``fallback="uniform"`` substitutes a uniform draw over legal moves at
    positions with no stored mix (robber-win regions); the default is to
    raise, which keeps solver/simulation disagreements loud.
    """

    kind = "mixed-table"

    def __init__(self, table: MixedStrategyTable, side: str, fallback: str = "error"):
        super().__init__(side)
        if fallback not in ("error", "uniform"):
            raise GraphError(f"unknown fallback {fallback!r}")
        self.table = table
        self.graph = table.graph
        self.fallback = fallback

    def distribution(self, p, round_index=1):
        if is_capture(p):
            return self._stay(p)
        store = self.table.cop if self.side == "C" else self.table.robber
        pos = (tuple(p[0]), p[1])
        dist = store.get(pos)
        if dist is not None:
            return list(dist)
        if self.fallback == "uniform":
            return _uniform_legal(self.graph, pos, self.side)
        raise StrategyError(f"no stored mix at {pos!r} for side {self.side!r}")


def _uniform_legal(g: Graph, p: ConcurrentPosition, side: str):
    import itertools

    cops, robber = p
    if side == "R":
        moves = [g.labels[i] for i in g.closed[g.node_id(robber)]]
        w = 1.0 / len(moves)
        return [(m, w) for m in moves]
    options = [
        [g.labels[i] for i in g.closed[g.node_id(c)]] for c in cops
    ]
    joints = list(itertools.product(*options))
    w = 1.0 / len(joints)
    return [(jm, w) for jm in joints]


class UniformRandomStrategy(StrategyHandle):
    kind = "uniform-random"

    def __init__(self, g: Graph, side: str):
        super().__init__(side)
        self.graph = g

    def distribution(self, p, round_index=1):
        if is_capture(p):
            return self._stay(p)
        return _uniform_legal(self.graph, (tuple(p[0]), p[1]), self.side)


class StationaryStrategy(StrategyHandle):
    """Never moves."""

    kind = "stationary"

    def __init__(self, side: str):
        super().__init__(side)

    def distribution(self, p, round_index=1):
        return self._stay((tuple(p[0]), p[1]))


class GuessingCopStrategy(StrategyHandle):
    """Turn-based pursuit lifted to simultaneous play by guessing.

    Each round the cops draw a guess of the robber's *next* node uniformly
    from the robber's closed neighborhood, then play the turn-based optimal
    joint move against the guessed node (staying put when the guess already
    sits under a cop). With probability at least ``(1/n)^T`` every guess over
    a ``T``-round stretch is right, so capture comes almost surely.
    """

    kind = "guessing-cop"

    def __init__(self, g: Graph, table: CopwinTable):
        super().__init__("C")
        if not table.all_finite():
            raise GraphError(
                "guessing cop requires a cop-win arena (every rank finite)"
            )
        self.graph = g
        self.copwin = table
        self.sigma = extract_cop_strategy(table)
        self._cache: dict[ConcurrentPosition, list] = {}

    def distribution(self, p, round_index=1):
        if is_capture(p):
            return self._stay(p)
        pos = (tuple(p[0]), p[1])
        cached = self._cache.get(pos)
        if cached is not None:
            return cached
        g = self.graph
        cops, robber = pos
        guesses = [g.labels[i] for i in g.closed[g.node_id(robber)]]
        weight = 1.0 / len(guesses)
        agg: dict[tuple, float] = {}
        for guess in guesses:
            jm = self.sigma.move_at((cops, guess, "C"))
            agg[jm] = agg.get(jm, 0.0) + weight
        dist = sorted(agg.items())
        self._cache[pos] = dist
        return dist


class DelayedEvasionStrategy(StrategyHandle):
    """Turn-based evasion lifted to simultaneous play by a one-round delay.

    Round 1: stay put. Every later round: play the turn-based winning robber
    move for the *current* position, which shadows the alternating game one
    round behind and never meets the cops — and never swaps an edge with one.
    Only defined where the turn-based robber wins; construction requires an
    arena with an evasion region, and play must start inside it.
    """

    kind = "delayed-evasion"

    def __init__(self, g: Graph, table: CopwinTable):
        super().__init__("R")
        self.graph = g
        self.copwin = table
        self.sigma = extract_robber_strategy(table)  # rejects cop-win arenas

    def placement_reply(self, cops) -> str:
        return self.sigma.placement_reply(tuple(cops))

    def distribution(self, p, round_index):
        if is_capture(p):
            return self._stay(p)
        if round_index <= 1:
            return self._stay((tuple(p[0]), p[1]))
        cops, robber = tuple(p[0]), p[1]
        key = (cops, robber, "R")
        if key not in self.sigma.move:
            raise StrategyError(
                f"delayed evasion undefined at {key!r}: position is losing "
                "for the robber"
            )
        return [(self.sigma.move[key], 1.0)]


def guessing_cop_strategy(g: Graph, table: CopwinTable) -> StrategyHandle:
    return GuessingCopStrategy(g, table)


def delayed_evasion_strategy(g: Graph, table: CopwinTable) -> StrategyHandle:
    return DelayedEvasionStrategy(g, table)


def mixed_table_strategy(
    table: MixedStrategyTable, side: str, fallback: str = "error"
) -> StrategyHandle:
    return MixedTableStrategy(table, side, fallback)


def uniform_random_strategy(g: Graph, side: str) -> StrategyHandle:
    return UniformRandomStrategy(g, side)


def stationary_strategy(side: str) -> StrategyHandle:
    return StationaryStrategy(side)


@dataclass
class EpisodeTrace:
    positions: list[ConcurrentPosition]
    capture_round: int | None
    en_passant: bool
    truncated: bool
    seed: int

    def total_payoff(self) -> int:
        """Sum of stage payoffs along the trace = capture round, or the trace
        length when truncated (every listed position except capture costs 1)."""
        return sum(1 for p in self.positions if not is_capture(p))


def _episode_rngs(seed: int):
    cop_ss, robber_ss = np.random.SeedSequence(seed).spawn(2)
    return (
        np.random.Generator(np.random.PCG64(cop_ss)),
        np.random.Generator(np.random.PCG64(robber_ss)),
    )


def run_episode(
    g: Graph,
    cop_strategy: StrategyHandle,
    robber_strategy: StrategyHandle,
    start,
    horizon: int,
    seed: int,
) -> EpisodeTrace:
    """Play one episode and record every position visited.

    The trace ends at the capture position or after ``horizon`` rounds,
    whichever comes first.
    """
    if cop_strategy.side != "C" or robber_strategy.side != "R":
        raise GraphError("cop_strategy must have side 'C' and robber_strategy side 'R'")
    cops, robber = start
    if isinstance(cops, str):
        cops = (cops,)
    pos: ConcurrentPosition = (tuple(cops), robber)
    for c in pos[0]:
        g.node_id(c)
    g.node_id(pos[1])
    cop_rng, robber_rng = _episode_rngs(seed)
    positions = [pos]
    if is_capture(pos):
        return EpisodeTrace(positions, 0, False, False, seed)
    for t in range(1, horizon + 1):
        cm = cop_strategy.sample(cop_rng, pos, t)
        rm = robber_strategy.sample(robber_rng, pos, t)
        step = cccr_step(g, pos, cm, rm)
        pos = step.position
        positions.append(pos)
        if step.captured:
            return EpisodeTrace(positions, t, step.en_passant, False, seed)
    return EpisodeTrace(positions, None, False, True, seed)


@dataclass
class ValueEstimate:
    mean: float
    stderr: float
    episodes: int
    captured: int
    truncated_fraction: float
    horizon: int
    capture_rounds: list[int]


def estimate_value(
    g: Graph,
    cop_strategy: StrategyHandle,
    robber_strategy: StrategyHandle,
    start,
    episodes: int,
    horizon: int,
    seed: int,
) -> ValueEstimate:
    """Mean total payoff (capture round; ``horizon + 1`` when truncated) over
    independently seeded episodes, with its standard error."""
    if episodes < 1:
        raise GraphError("episodes must be >= 1")
    cops, robber = start
    if isinstance(cops, str):
        cops = (cops,)
    start_pos: ConcurrentPosition = (tuple(cops), robber)
    for c in start_pos[0]:
        g.node_id(c)
    g.node_id(start_pos[1])

    children = np.random.SeedSequence(seed).spawn(episodes)
    total = 0.0
    total_sq = 0.0
    captured = 0
    truncated = 0
    capture_rounds: list[int] = []
    start_captured = is_capture(start_pos)
    for child in children:
        if start_captured:
            payoff = 0
            captured += 1
            capture_rounds.append(0)
        else:
            cop_ss, robber_ss = child.spawn(2)
            cop_rng = np.random.Generator(np.random.PCG64(cop_ss))
            robber_rng = np.random.Generator(np.random.PCG64(robber_ss))
            pos = start_pos
            payoff = None
            for t in range(1, horizon + 1):
                cm = cop_strategy.sample(cop_rng, pos, t)
                rm = robber_strategy.sample(robber_rng, pos, t)
                step = cccr_step(g, pos, cm, rm)
                pos = step.position
                if step.captured:
                    payoff = t
                    captured += 1
                    capture_rounds.append(t)
                    break
            if payoff is None:
                payoff = horizon + 1
                truncated += 1
        total += payoff
        total_sq += payoff * payoff
    mean = total / episodes
    var = max(total_sq / episodes - mean * mean, 0.0)
    stderr = math.sqrt(var / episodes) if episodes > 1 else math.inf
    return ValueEstimate(
        mean=mean,
        stderr=stderr,
        episodes=episodes,
        captured=captured,
        truncated_fraction=truncated / episodes,
        horizon=horizon,
        capture_rounds=capture_rounds,
    )
