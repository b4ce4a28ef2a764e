"""Simultaneous-move pursuit on a graph: optimal expected capture time and
memoryless mixed strategies, by value iteration over per-position matrix games.

A position is ``(cops, robber)``: a K-tuple of node labels and a node label.
Both sides move at once. Each token's move must stay inside its closed
neighborhood (an in-graph node outside it leaves the token in place). Capture
happens on coincidence — some cop's destination equals the robber's — or "en
passant", when a cop and the robber swap endpoints of an edge in the same
round; in that case the robber is seized at its old node. Captured positions
are absorbing.

Every round spent uncaptured costs 1, so the value of a position is the
optimal expected number of rounds until capture, counting the starting round:

    v(p) = 0 at capture,  v(p) = Val[ 1 + v(next(p, r, c)) ]  otherwise,

where Val is the minimax value of the matrix game whose rows are robber moves
(maximizer) and whose columns are joint cop moves (minimizer). Value iteration
from v=0 climbs monotonically to the least fixpoint; positions whose iterates
pass the divergence ceiling are reported as ``inf`` (robber-win positions grow
without bound, roughly +1 per sweep).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError
from .matrix_game import MatrixGame, game_value, solve_matrix_game

ConcurrentPosition = tuple[tuple[str, ...], str]


def _normalize(g: Graph, p) -> ConcurrentPosition:
    cops, robber = p
    if isinstance(cops, str):
        cops = (cops,)
    cops = tuple(cops)
    if not cops:
        raise GraphError("at least one cop required")
    for c in cops:
        g.node_id(c)
    g.node_id(robber)
    return (cops, robber)


def is_capture(p: ConcurrentPosition) -> bool:
    cops, robber = p
    return robber in tuple(cops) if not isinstance(cops, str) else robber == cops


def stage_payoff(p: ConcurrentPosition) -> int:
    """1 for every round the robber is free, 0 once captured."""
    return 0 if is_capture(p) else 1


@dataclass
class StepResult:
    position: ConcurrentPosition
    captured: bool
    en_passant: bool


def cccr_step(g: Graph, p, cop_moves, robber_move) -> StepResult:
    """One simultaneous round, with capture/en-passant flags.

    Capture priority when both events could apply: coincidence governs (the
    robber is taken at its destination); otherwise a swap seizes the robber at
    its old node. Captured input positions are absorbing.
    """
    cops, robber = _normalize(g, p)
    if robber in cops:
        return StepResult(position=(cops, robber), captured=True, en_passant=False)
    if isinstance(cop_moves, str):
        cop_moves = (cop_moves,)
    cop_moves = tuple(cop_moves)
    if len(cop_moves) != len(cops):
        raise GraphError(f"expected {len(cops)} cop moves, got {len(cop_moves)}")
    dests = []
    for cur, m in zip(cops, cop_moves):
        mid = g.node_id(m)
        dests.append(m if mid in g.closed[g.node_id(cur)] else cur)
    rid = g.node_id(robber_move)
    rdest = robber_move if rid in g.closed[g.node_id(robber)] else robber
    dests = tuple(dests)
    if rdest in dests:
        return StepResult(position=(dests, rdest), captured=True, en_passant=False)
    swap = any(d == robber and rdest == c for c, d in zip(cops, dests))
    if swap:
        return StepResult(position=(dests, robber), captured=True, en_passant=True)
    return StepResult(position=(dests, rdest), captured=False, en_passant=False)


def cccr_transition(g: Graph, p, cop_moves, robber_move) -> ConcurrentPosition:
    return cccr_step(g, p, cop_moves, robber_move).position


def local_game(g: Graph, p, values, ceiling: float) -> MatrixGame:
    """The one-round matrix game at ``p`` under a value snapshot.

    Rows are robber moves, columns joint cop moves; each entry is
    ``1 + values[next]`` with capture successors worth 1 and infinite
    successors clamped to ``ceiling``. Rejects captured positions.
    """
    cops, robber = _normalize(g, p)
    if robber in cops:
        raise GraphError("no local game at a captured position")
    row_actions = tuple(g.labels[i] for i in g.closed[g.node_id(robber)])
    col_actions = tuple(
        itertools.product(*[
            tuple(g.labels[i] for i in g.closed[g.node_id(c)]) for c in cops
        ])
    )
    m = np.empty((len(row_actions), len(col_actions)))
    for i, rv in enumerate(row_actions):
        for j, jm in enumerate(col_actions):
            nxt = cccr_step(g, (cops, robber), jm, rv)
            if nxt.captured:
                m[i, j] = 1.0
            else:
                v = values[nxt.position]
                m[i, j] = ceiling if v == math.inf else 1.0 + v
    return MatrixGame(payoffs=m, row_actions=row_actions, col_actions=col_actions)


@dataclass
class ValueTable:
    graph: Graph
    cop_count: int
    values: dict[ConcurrentPosition, float]
    iterations_used: int
    converged: bool
    tol: float
    ceiling: float
    delta_history: list[float] = field(default_factory=list)
    min_delta_history: list[float] = field(default_factory=list)

    def value(self, p) -> float:
        return self.values[_normalize(self.graph, p)]

    def finite(self) -> bool:
        return all(v < math.inf for v in self.values.values())


@dataclass
class MixedStrategyTable:
    graph: Graph
    cop_count: int
    cop: dict[ConcurrentPosition, tuple]
    robber: dict[ConcurrentPosition, tuple]


def capture_time(table: ValueTable) -> float:
    """Worst starting position's value — ``inf`` if the robber wins anywhere."""
    return max(table.values.values())


def query_strategy(table: MixedStrategyTable, p, side: str):
    """The stored mix at ``p``: a list of (move, probability) pairs, where a
    cop move is a K-tuple of labels and a robber move a label."""
    pos = _normalize(table.graph, p)
    if side not in ("C", "R"):
        raise GraphError(f"side must be 'C' or 'R', got {side!r}")
    if is_capture(pos):
        raise GraphError("no strategy at a captured position")
    store = table.cop if side == "C" else table.robber
    if pos not in store:
        raise GraphError(
            f"no optimal mix stored at {pos!r} (position has no finite value)"
        )
    return list(store[pos])


class _Arena:
    """Integer-encoded positions with precomputed successor tensors."""

    def __init__(self, g: Graph, cop_count: int):
        self.g = g
        self.k = cop_count
        n = len(g)
        self.n = n
        self.cop_tuples = list(itertools.product(range(n), repeat=cop_count))
        self.tuple_index = {c: i for i, c in enumerate(self.cop_tuples)}
        self.n_pos = len(self.cop_tuples) * n
        self.capture = np.zeros(self.n_pos, dtype=bool)
        for ci, c in enumerate(self.cop_tuples):
            for y in range(n):
                if y in c:
                    self.capture[ci * n + y] = True
        self.rows: dict[int, tuple[int, ...]] = {}
        self.cols: dict[int, tuple[tuple[int, ...], ...]] = {}
        self.succ: dict[int, np.ndarray] = {}
        for ci, c in enumerate(self.cop_tuples):
            joint = list(itertools.product(*[g.closed[x] for x in c]))
            for y in range(n):
                pid = ci * n + y
                if self.capture[pid]:
                    continue
                rows = g.closed[y]
                mat = np.empty((len(rows), len(joint)), dtype=np.int64)
                for i, rv in enumerate(rows):
                    for j, jm in enumerate(joint):
                        if rv in jm:
                            mat[i, j] = self.tuple_index[jm] * n + rv
                        elif any(d == y and rv == cc for cc, d in zip(c, jm)):
                            mat[i, j] = self.tuple_index[jm] * n + y
                        else:
                            mat[i, j] = self.tuple_index[jm] * n + rv
                self.rows[pid] = rows
                self.cols[pid] = tuple(joint)
                self.succ[pid] = mat

    def decode(self, pid: int) -> ConcurrentPosition:
        ci, y = divmod(pid, self.n)
        labels = self.g.labels
        return (tuple(labels[x] for x in self.cop_tuples[ci]), labels[y])


def value_iterate(
    g: Graph,
    cop_count: int,
    tol: float = 1e-2,
    max_iter: int = 10000,
    ceiling: float | None = None,
    workers: int = 1,
) -> tuple[ValueTable, MixedStrategyTable]:
    """Solve the whole arena.

    Runs Jacobi sweeps (every position updated from the previous sweep's
    table, so results do not depend on update order or on ``workers``) until
    the max-norm change over not-yet-diverged positions drops below ``tol``.
    Returns the value table and the optimal mixed strategies extracted from
    the converged values.
    """
    if cop_count < 1:
        raise GraphError("cop_count must be >= 1")
    if max_iter < 1:
        raise GraphError("max_iter must be >= 1")
    if tol <= 0:
        raise GraphError("tol must be positive")
    arena = _Arena(g, cop_count)
    if ceiling is None:
        ceiling = 10.0 * len(g) ** (cop_count + 1)
    v = np.zeros(arena.n_pos)
    noncapture = [pid for pid in range(arena.n_pos) if not arena.capture[pid]]
    delta_history: list[float] = []
    min_delta_history: list[float] = []
    converged = False
    iterations = 0

    def solve_one(pid: int, table: np.ndarray) -> float:
        return game_value(1.0 + table[arena.succ[pid]])

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for _ in range(max_iter):
            iterations += 1
            v_new = v.copy()
            if pool is not None:
                results = pool.map(lambda pid: solve_one(pid, v), noncapture)
                for pid, val in zip(noncapture, results):
                    v_new[pid] = val
            else:
                for pid in noncapture:
                    v_new[pid] = solve_one(pid, v)
            tracked = v_new <= ceiling
            diffs = v_new - v
            if tracked.any():
                delta = float(np.abs(diffs[tracked]).max())
            else:
                delta = 0.0
            delta_history.append(delta)
            min_delta_history.append(float(diffs.min()) if len(diffs) else 0.0)
            v = v_new
            if delta < tol:
                converged = True
                break
    finally:
        if pool is not None:
            pool.shutdown()

    values: dict[ConcurrentPosition, float] = {}
    for pid in range(arena.n_pos):
        pos = arena.decode(pid)
        if arena.capture[pid]:
            values[pos] = 0.0
        else:
            values[pos] = math.inf if v[pid] > ceiling else float(v[pid])

    vt = ValueTable(
        graph=g,
        cop_count=cop_count,
        values=values,
        iterations_used=iterations,
        converged=converged,
        tol=tol,
        ceiling=ceiling,
        delta_history=delta_history,
        min_delta_history=min_delta_history,
    )

    cop_mix: dict[ConcurrentPosition, tuple] = {}
    robber_mix: dict[ConcurrentPosition, tuple] = {}
    labels = g.labels
    for pid in noncapture:
        if v[pid] > ceiling:
            continue
        entries = 1.0 + v[arena.succ[pid]]
        entries[entries > ceiling] = ceiling
        sol = solve_matrix_game(entries)
        pos = arena.decode(pid)
        rows = arena.rows[pid]
        cols = arena.cols[pid]
        robber_mix[pos] = tuple(
            (labels[rv], float(prob))
            for rv, prob in zip(rows, sol.row_mix)
            if prob > 1e-12
        )
        cop_mix[pos] = tuple(
            (tuple(labels[x] for x in jm), float(prob))
            for jm, prob in zip(cols, sol.col_mix)
            if prob > 1e-12
        )
    mt = MixedStrategyTable(graph=g, cop_count=cop_count, cop=cop_mix, robber=robber_mix)
    return vt, mt
