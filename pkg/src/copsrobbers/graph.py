"""Finite simple graphs: parsing, generators, and the neighborhood queries the
game engines are built on.

Nodes are identified by string labels externally. Internally every graph keeps
a stable node order (first appearance for parsed graphs, numeric order for
generated ones); all deterministic tie-breaking elsewhere in the package
follows that order.
"""

from __future__ import annotations

import hashlib
from collections import deque


class GraphError(ValueError):
    """Raised for malformed edge lists, unknown nodes, and bad generator specs."""


class Graph:
    """An undirected, connected, loop-free graph over string-labeled nodes."""

    def __init__(self, labels: list[str], edges: list[tuple[str, str]]):
        if not labels:
            raise GraphError("graph must have at least one node")
        if len(set(labels)) != len(labels):
            raise GraphError("duplicate node labels")
        self.labels: tuple[str, ...] = tuple(labels)
        self._index: dict[str, int] = {lab: i for i, lab in enumerate(self.labels)}
        n = len(self.labels)
        adj: list[set[int]] = [set() for _ in range(n)]
        edge_set: set[tuple[int, int]] = set()
        for u, w in edges:
            if u not in self._index or w not in self._index:
                raise GraphError(f"edge ({u}, {w}) references unknown node")
            iu, iw = self._index[u], self._index[w]
            if iu == iw:
                raise GraphError(f"self-loop at node {u}")
            adj[iu].add(iw)
            adj[iw].add(iu)
            edge_set.add((min(iu, iw), max(iu, iw)))
        self.neighbors: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj
        )
        self.closed: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s | {i})) for i, s in enumerate(adj)
        )
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self._check_connected()

    @classmethod
    def from_edges(cls, edges) -> "Graph":
        """Build a graph from (u, w) pairs, nodes ordered by first appearance."""
        labels: list[str] = []
        seen: set[str] = set()
        pairs = []
        for u, w in edges:
            for lab in (u, w):
                if lab not in seen:
                    seen.add(lab)
                    labels.append(lab)
            pairs.append((u, w))
        return cls(labels, pairs)

    def _check_connected(self):
        n = len(self.labels)
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != n:
            inside = next(self.labels[i] for i in sorted(seen))
            outside = next(self.labels[i] for i in range(n) if i not in seen)
            raise GraphError(
                f"graph is disconnected: no path between {inside!r} and {outside!r}"
            )

    # -- label/index plumbing -------------------------------------------------

    def node_id(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown node {label!r}") from None

    def label(self, idx: int) -> str:
        return self.labels[idx]

    def has_node(self, label: str) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Graph({len(self.labels)} nodes, {len(self.edges)} edges)"

    def edge_labels(self) -> list[tuple[str, str]]:
        return [(self.labels[u], self.labels[w]) for u, w in self.edges]

    def degree(self, label: str) -> int:
        return len(self.neighbors[self.node_id(label)])


def parse_edge_list(text: str) -> Graph:
    """Parse a whitespace edge list, one edge per line.

    Lines are ``u w`` pairs of node labels; blank lines and ``#`` comments are
    skipped. Nodes are ordered by first appearance. Self-loops, malformed
    lines, empty input, and disconnected graphs are rejected.
    """
    labels: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two node labels, got {raw!r}")
        u, w = parts
        if u == w:
            raise GraphError(f"line {lineno}: self-loop at node {u}")
        for lab in (u, w):
            if lab not in seen:
                seen.add(lab)
                labels.append(lab)
        edges.append((u, w))
    if not edges:
        raise GraphError("empty edge list")
    return Graph(labels, edges)


def closed_neighborhood(g: Graph, u: str) -> set[str]:
    """N[u]: u together with its neighbors."""
    return {g.labels[w] for w in g.closed[g.node_id(u)]}


def distance(g: Graph, u: str, w: str) -> int:
    """Length of a shortest path between u and w (BFS)."""
    src, dst = g.node_id(u), g.node_id(w)
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in g.neighbors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == dst:
                    return dist[y]
                queue.append(y)
    raise GraphError(f"no path between {u!r} and {w!r}")


# -- generators ---------------------------------------------------------------

# The two named fixtures used throughout the tests and docs. paper-tree is the
# 5-node tree rooted at 1 with an internal node 3; gavenciak is a 10-node
# cop-win graph whose chase is long: a dense 7-node core with a 3-node tail.
_PAPER_TREE_EDGES = [(1, 2), (1, 3), (3, 4), (3, 5)]
_GAVENCIAK_EDGES = [
    (1, 2), (1, 3), (1, 5), (1, 6),
    (2, 3), (2, 4), (2, 5),
    (3, 4), (3, 6),
    (4, 5), (4, 6), (4, 7),
    (5, 7), (6, 7),
    (7, 8), (8, 9), (9, 10),
]


def generate(spec: str) -> Graph:
    """Build a named graph from a generator spec.

    Supported specs: ``path:n`` (n >= 2), ``cycle:n`` (n >= 3), ``clique:n``
    (n >= 2), ``paper-tree``, and ``gavenciak``.
    """
    spec = spec.strip()
    if spec == "paper-tree":
        return _from_int_edges(5, _PAPER_TREE_EDGES)
    if spec == "gavenciak":
        return _from_int_edges(10, _GAVENCIAK_EDGES)
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        try:
            n = int(arg)
        except ValueError:
            raise GraphError(f"bad generator size in {spec!r}") from None
        if kind == "path":
            if n < 2:
                raise GraphError("path:n requires n >= 2")
            return _from_int_edges(n, [(i, i + 1) for i in range(1, n)])
        if kind == "cycle":
            if n < 3:
                raise GraphError("cycle:n requires n >= 3")
            return _from_int_edges(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])
        if kind == "clique":
            if n < 2:
                raise GraphError("clique:n requires n >= 2")
            return _from_int_edges(
                n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
            )
    raise GraphError(f"unknown generator spec {spec!r}")


def _from_int_edges(n: int, edges: list[tuple[int, int]]) -> Graph:
    return Graph([str(i) for i in range(1, n + 1)], [(str(u), str(w)) for u, w in edges])


def edge_list_text(g: Graph) -> str:
    """Serialize a graph in the format parse_edge_list accepts.

    Edges are ordered so that nodes first appear in the graph's own node
    order, making parse(emit(g)) reproduce g exactly, labels included.
    """
    ordered = sorted(g.edges, key=lambda e: (e[1], e[0]))
    return "\n".join(f"{g.labels[u]} {g.labels[w]}" for u, w in ordered) + "\n"


def graph_key(g: Graph) -> str:
    """Structural content hash: sorted node set plus sorted edge set."""
    pairs = sorted(tuple(sorted(e)) for e in g.edge_labels())
    canonical = ",".join(sorted(g.labels)) + "|" + ";".join(
        f"{u}-{w}" for u, w in pairs
    )
    return hashlib.sha256(canonical.encode()).hexdigest()
