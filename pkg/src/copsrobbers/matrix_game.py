"""Exact solution of finite two-player zero-sum matrix games.

Conventions: the payoff matrix ``a`` is written from the row player's point of
view — rows are the maximizer's actions, columns the minimizer's. The value
``v`` and a pair of optimal mixed strategies satisfy the security conditions

    row_mix @ a >= v - tol   (componentwise, against every column)
    a @ col_mix <= v + tol   (componentwise, against every row)

Solved as a pair of linear programs in the classical shifted-reciprocal form:
shift the matrix positive (``b = a + c`` with ``c = 1 - min(a)``), solve

    min sum(u)  s.t.  b.T @ u >= 1,  u >= 0

whose optimum gives the shifted value ``1 / sum(u)`` and row mix ``u * value``;
the column mix is recovered from the LP duals (falling back to the explicit
dual program if needed). Games with a pure saddle point skip the LP entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog


@dataclass
class GameSolution:
    value: float
    row_mix: np.ndarray
    col_mix: np.ndarray


@dataclass
class MatrixGame:
    """A payoff matrix plus optional action labels (used by the game engines)."""

    payoffs: np.ndarray
    row_actions: tuple = ()
    col_actions: tuple = ()


def _as_matrix(a) -> np.ndarray:
    if isinstance(a, MatrixGame):
        a = a.payoffs
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("payoff matrix must be 2-D and non-empty")
    if not np.all(np.isfinite(m)):
        raise ValueError("payoff matrix entries must be finite")
    return m


def saddle_point_shortcut(a) -> GameSolution | None:
    """Return the pure solution when max of row minima equals min of column
    maxima, else None. Ties break toward the lowest action index."""
    m = _as_matrix(a)
    row_min = m.min(axis=1)
    col_max = m.max(axis=0)
    i = int(np.argmax(row_min))
    j = int(np.argmin(col_max))
    if row_min[i] != col_max[j]:
        return None
    row_mix = np.zeros(m.shape[0])
    col_mix = np.zeros(m.shape[1])
    row_mix[i] = 1.0
    col_mix[j] = 1.0
    return GameSolution(value=float(m[i, j]), row_mix=row_mix, col_mix=col_mix)


def _clean_mix(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, None)
    total = x.sum()
    if total <= 0:
        raise RuntimeError("LP produced a degenerate mixed strategy")
    return x / total


def game_value(a) -> float:
    """Value only — the cheap path used inside value-iteration sweeps."""
    pure = saddle_point_shortcut(a)
    if pure is not None:
        return pure.value
    m = _as_matrix(a)
    shift = 1.0 - m.min()
    b = m + shift
    res = linprog(
        np.ones(m.shape[0]),
        A_ub=-b.T,
        b_ub=-np.ones(m.shape[1]),
        bounds=(0, None),
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"matrix game LP failed: {res.message}")
    return 1.0 / res.fun - shift


def solve_matrix_game(a, tol: float = 1e-9) -> GameSolution:
    """Value and one optimal mixed strategy per side.

    The returned mixes are verified against the security conditions at
    ``max(tol, 1e-8)``; if the dual-derived column mix misses that bound the
    explicit column LP is solved instead.
    """
    pure = saddle_point_shortcut(a)
    if pure is not None:
        return pure
    m = _as_matrix(a)
    shift = 1.0 - m.min()
    b = m + shift
    n_rows, n_cols = m.shape
    res = linprog(
        np.ones(n_rows),
        A_ub=-b.T,
        b_ub=-np.ones(n_cols),
        bounds=(0, None),
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"matrix game LP failed: {res.message}")
    value = 1.0 / res.fun - shift
    row_mix = _clean_mix(np.asarray(res.x))

    col_mix = None
    marginals = getattr(getattr(res, "ineqlin", None), "marginals", None)
    if marginals is not None:
        duals = -np.asarray(marginals)
        if duals.sum() > 0:
            candidate = _clean_mix(duals)
            check = max(tol, 1e-8)
            if np.all(m @ candidate <= value + check):
                col_mix = candidate
    if col_mix is None:
        res2 = linprog(
            -np.ones(n_cols),
            A_ub=b,
            b_ub=np.ones(n_rows),
            bounds=(0, None),
            method="highs",
        )
        if not res2.success:
            raise RuntimeError(f"matrix game dual LP failed: {res2.message}")
        col_mix = _clean_mix(np.asarray(res2.x))
    return GameSolution(value=float(value), row_mix=row_mix, col_mix=col_mix)
