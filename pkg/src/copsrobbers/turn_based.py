"""Alternating-move pursuit on a graph: rank solver and strategy extraction.

A position is ``(cops, robber, turn)`` where ``cops`` is a K-tuple of node
labels, ``robber`` a node label, and ``turn`` is ``"C"`` (cops move next) or
``"R"``. Cops move jointly: each cop steps within its closed neighborhood.
Capture means some cop stands on the robber's node; captured positions are
frozen (moves no longer change locations, only the turn flips).

The rank of a position is the number of cop phases needed to force capture
under optimal play by both sides (0 exactly at capture, ``inf`` where the
robber can evade forever). Ranks are the least fixpoint of

    rank(p) = 1 + min over joint cop moves of rank(next)    (cop to move)
    rank(p) = max over robber moves of rank(next)           (robber to move)

computed by downward sweeps from ``inf`` with capture positions pinned at 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .graph import Graph, GraphError

TurnPosition = tuple[tuple[str, ...], str, str]


def _check_cops(g: Graph, cops) -> tuple[str, ...]:
    if isinstance(cops, str):
        cops = (cops,)
    cops = tuple(cops)
    if not cops:
        raise GraphError("at least one cop required")
    for c in cops:
        g.node_id(c)
    return cops


def tbcr_transition(g: Graph, p: TurnPosition, move) -> TurnPosition:
    """Apply one move to a position.

    ``move`` is a K-tuple of node labels on a cop turn (a bare label is
    accepted for K=1) and a single label on a robber turn. Moves must name
    nodes of the graph; a legal-but-out-of-range move (an in-graph node
    outside the mover's closed neighborhood) leaves that token in place.
    Captured positions are frozen: any move only flips the turn.
    """
    cops, robber, turn = p
    cops = _check_cops(g, cops)
    g.node_id(robber)
    if turn not in ("C", "R"):
        raise GraphError(f"bad turn marker {turn!r}")
    next_turn = "R" if turn == "C" else "C"
    if robber in cops:
        return (cops, robber, next_turn)
    if turn == "C":
        if isinstance(move, str):
            move = (move,)
        move = tuple(move)
        if len(move) != len(cops):
            raise GraphError(f"expected {len(cops)} cop moves, got {len(move)}")
        new_cops = []
        for cur, m in zip(cops, move):
            mid = g.node_id(m)
            new_cops.append(m if mid in g.closed[g.node_id(cur)] else cur)
        return (tuple(new_cops), robber, next_turn)
    if not isinstance(move, str):
        raise GraphError("robber move must be a single node label")
    mid = g.node_id(move)
    new_robber = move if mid in g.closed[g.node_id(robber)] else robber
    return (cops, new_robber, next_turn)


@dataclass
class CopwinTable:
    graph: Graph
    cop_count: int
    rank: dict[TurnPosition, float]

    def rank_of(self, p: TurnPosition) -> float:
        cops, robber, turn = p
        return self.rank[(tuple(cops), robber, turn)]

    def all_finite(self) -> bool:
        return all(r < math.inf for r in self.rank.values())

    def max_finite_rank(self) -> int:
        return int(max(r for r in self.rank.values() if r < math.inf))


def _joint_moves(g: Graph, cops: tuple[str, ...]):
    neighborhoods = [
        tuple(g.labels[i] for i in g.closed[g.node_id(c)]) for c in cops
    ]
    return itertools.product(*neighborhoods)


def solve_copwin(g: Graph, cop_count: int) -> CopwinTable:
    """Rank every position for ``cop_count`` cops (see module docstring)."""
    if cop_count < 1:
        raise GraphError("cop_count must be >= 1")
    labels = g.labels
    positions = [
        (c, y, t)
        for c in itertools.product(labels, repeat=cop_count)
        for y in labels
        for t in ("C", "R")
    ]
    rank = {p: (0.0 if p[1] in p[0] else math.inf) for p in positions}
    moves_cache = {
        c: tuple(_joint_moves(g, c))
        for c in itertools.product(labels, repeat=cop_count)
    }
    robber_moves = {
        y: tuple(labels[i] for i in g.closed[g.node_id(y)]) for y in labels
    }
    changed = True
    while changed:
        changed = False
        for p in positions:
            if rank[p] == 0.0:
                continue
            cops, y, turn = p
            if turn == "C":
                new = min(rank[(mv, y, "R")] for mv in moves_cache[cops]) + 1
            else:
                new = max(rank[(cops, r, "C")] for r in robber_moves[y])
            if new < rank[p]:
                rank[p] = new
                changed = True
    return CopwinTable(graph=g, cop_count=cop_count, rank=rank)


def cop_number(g: Graph, max_cops: int = 4) -> int | None:
    """Smallest K <= max_cops whose K-cop game is winning from some opening
    (equivalently, from every position); None if that exceeds max_cops."""
    for k in range(1, max_cops + 1):
        if solve_copwin(g, k).all_finite():
            return k
    return None


def canonical_opening(g: Graph, cop_count: int) -> tuple[str, ...]:
    """The K highest-degree nodes (distinct, ties broken by node order) —
    the deterministic opening used for reported capture times."""
    if cop_count > len(g):
        raise GraphError("more cops than nodes")
    order = sorted(range(len(g)), key=lambda i: (-len(g.neighbors[i]), i))
    return tuple(g.labels[i] for i in order[:cop_count])


def tbcr_capture_time(g: Graph, cop_count: int) -> float:
    """Worst-case number of cop phases to capture when the cops start from the
    canonical opening and both sides then play optimally; ``inf`` when the
    robber can evade (cop_count below the graph's cop number)."""
    table = solve_copwin(g, cop_count)
    opening = canonical_opening(g, cop_count)
    worst = max(table.rank[(opening, y, "C")] for y in g.labels)
    return worst if worst == math.inf else int(worst)


@dataclass
class DeterministicStrategy:
    """A move per position for one side, plus (for the robber) placement
    replies to each cop opening."""

    side: str
    graph: Graph
    cop_count: int
    move: dict[TurnPosition, object] = field(default_factory=dict)
    placement: dict[tuple[str, ...], str] = field(default_factory=dict)

    def move_at(self, p: TurnPosition):
        cops, robber, turn = p
        key = (tuple(cops), robber, turn)
        if key not in self.move:
            raise GraphError(
                f"strategy for side {self.side!r} is not defined at {key!r}"
            )
        return self.move[key]

    def placement_reply(self, cops) -> str:
        key = tuple(cops)
        if key not in self.placement:
            raise GraphError(f"no placement reply recorded for opening {key!r}")
        return self.placement[key]


def extract_cop_strategy(table: CopwinTable) -> DeterministicStrategy:
    """Rank-decreasing joint moves at every finite-rank cop-turn position
    (ties: first in joint-move enumeration order, i.e. lexicographic by node
    order per cop). Captured positions prescribe staying put."""
    g = table.graph
    strat = DeterministicStrategy(side="C", graph=g, cop_count=table.cop_count)
    for p, r in table.rank.items():
        cops, y, turn = p
        if turn != "C" or r == math.inf:
            continue
        if r == 0.0:
            strat.move[p] = cops
            continue
        target = r - 1
        for mv in _joint_moves(g, cops):
            if table.rank[(mv, y, "R")] <= target:
                strat.move[p] = mv
                break
    return strat


def extract_robber_strategy(table: CopwinTable) -> DeterministicStrategy:
    """Evasion moves at every infinite-rank robber-turn position, plus a
    placement reply (an infinite-rank node, first in node order) to every cop
    opening. Rejects tables where the cops win from everywhere."""
    g = table.graph
    if table.all_finite():
        raise GraphError(
            "no evasion region: the cops win from every position at this cop count"
        )
    strat = DeterministicStrategy(side="R", graph=g, cop_count=table.cop_count)
    for p, r in table.rank.items():
        cops, y, turn = p
        if turn != "R" or r < math.inf:
            continue
        for mv in (g.labels[i] for i in g.closed[g.node_id(y)]):
            if table.rank[(cops, mv, "C")] == math.inf:
                strat.move[p] = mv
                break
    for cops in itertools.product(g.labels, repeat=table.cop_count):
        for y in g.labels:
            if table.rank[(cops, y, "C")] == math.inf:
                strat.placement[cops] = y
                break
    return strat
