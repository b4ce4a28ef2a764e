"""Figure rendering: graph drawings, value heatmaps, convergence traces,
and capture-round histograms, written to image files."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .concurrent_game import ValueTable
from .graph import Graph, generate, graph_key
from .simulation import ValueEstimate

# Hand-placed coordinates for the two named fixture graphs, keyed by their
# structural hash so a graph loaded from an edge list still matches.
_FIXTURE_COORDS = {
    "gavenciak": {
        "1": (2.0, -1.0), "2": (3.0, -2.0), "3": (3.0, 0.0),
        "4": (1.0, -1.0), "5": (1.0, -2.0), "6": (1.0, 0.0),
        "7": (0.0, -1.0), "8": (-1.0, -1.0), "9": (-2.0, -1.0),
        "10": (-3.0, -1.0),
    },
    "paper-tree": {
        "1": (0.0, 0.0), "2": (-1.0, -1.0), "3": (1.0, -1.0),
        "4": (0.0, -2.0), "5": (2.0, -2.0),
    },
}

_KEYED_COORDS = None


def _fixture_coords(g: Graph):
    global _KEYED_COORDS
    if _KEYED_COORDS is None:
        _KEYED_COORDS = {
            graph_key(generate(name)): coords
            for name, coords in _FIXTURE_COORDS.items()
        }
    return _KEYED_COORDS.get(graph_key(g))


def _is_path(g: Graph) -> bool:
    degs = sorted(len(nbrs) for nbrs in g.neighbors)
    if len(g) == 1:
        return True
    if len(g) == 2:
        return degs == [1, 1]
    return degs[:2] == [1, 1] and all(d == 2 for d in degs[2:])


def node_layout(g: Graph) -> dict:
    """Label -> (x, y). Fixture graphs use hand-placed coordinates; paths lie
    on a line; everything else goes on a circle."""
    coords = _fixture_coords(g)
    if coords is not None:
        return dict(coords)
    if _is_path(g):
        # Walk from one endpoint.
        start = min(
            (i for i in range(len(g)) if len(g.neighbors[i]) <= 1),
            default=0,
        )
        order = [start]
        seen = {start}
        while True:
            nxt = [j for j in g.neighbors[order[-1]] if j not in seen]
            if not nxt:
                break
            order.append(nxt[0])
            seen.add(nxt[0])
        return {g.labels[i]: (float(k), 0.0) for k, i in enumerate(order)}
    n = len(g)
    return {
        lab: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i, lab in enumerate(g.labels)
    }


def save_graph(g: Graph, path: str, highlight=()) -> str:
    coords = node_layout(g)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for a, b in g.edge_labels():
        (x1, y1), (x2, y2) = coords[a], coords[b]
        ax.plot([x1, x2], [y1, y2], color="#888888", zorder=1, linewidth=1.4)
    hi = set(highlight)
    for lab, (x, y) in coords.items():
        face = "#d94f4f" if lab in hi else "#4f7fd9"
        ax.scatter([x], [y], s=520, color=face, zorder=2, edgecolors="black")
        ax.annotate(lab, (x, y), ha="center", va="center",
                    color="white", fontsize=10, zorder=3)
    ax.set_axis_off()
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def save_value_heatmap(vt: ValueTable, path: str) -> str:
    """Single-cop expected-capture-time matrix: rows are cop nodes, columns
    robber nodes; unbounded cells are hatched."""
    if vt.cop_count != 1:
        raise ValueError("heatmap export is defined for the single-cop game only")
    labels = vt.graph.labels
    n = len(labels)
    m = np.zeros((n, n))
    mask = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            v = vt.values[((x,), y)]
            if v == math.inf:
                mask[i, j] = True
            else:
                m[i, j] = v
    data = np.ma.masked_array(m, mask=mask)
    fig, ax = plt.subplots(figsize=(0.7 * n + 2.4, 0.7 * n + 1.8))
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("#cccccc")
    im = ax.imshow(data, cmap=cmap)
    for i in range(n):
        for j in range(n):
            txt = "∞" if mask[i, j] else f"{m[i, j]:.2f}".rstrip("0").rstrip(".")
            ax.annotate(txt, (j, i), ha="center", va="center", fontsize=8,
                        color="white" if not mask[i, j] else "black")
    ax.set_xticks(range(n), labels)
    ax.set_yticks(range(n), labels)
    ax.set_xlabel("robber node")
    ax.set_ylabel("cop node")
    ax.set_title("expected rounds to capture")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def save_convergence(vt: ValueTable, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    sweeps = range(1, len(vt.delta_history) + 1)
    ax.semilogy(list(sweeps), vt.delta_history, color="#4f7fd9")
    ax.axhline(vt.tol, color="#d94f4f", linestyle="--", linewidth=1,
               label=f"tolerance {vt.tol:g}")
    ax.set_xlabel("sweep")
    ax.set_ylabel("max value change")
    ax.set_title(f"value iteration ({vt.iterations_used} sweeps)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def save_capture_histogram(est: ValueEstimate, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    rounds = [r for r in est.capture_rounds if r is not None]
    if rounds:
        hi = max(rounds)
        ax.hist(rounds, bins=range(1, hi + 2), align="left",
                color="#4f7fd9", edgecolor="black")
    ax.axvline(est.mean, color="#d94f4f", linestyle="--",
               label=f"mean {est.mean:.3f}")
    ax.set_xlabel("capture round")
    ax.set_ylabel("episodes")
    ax.set_title(f"{est.episodes} episodes, {est.captured} captures")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
