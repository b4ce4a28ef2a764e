/** Node placement for the board.
 *
 * Known demo arenas get hand-tuned coordinates; paths lie on a line, cycles
 * on a circle; anything else falls back to a force-directed layout seeded
 * deterministically from the node labels, so the same graph always renders
 * the same way.
 */

import type { GraphDoc } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export type Layout = Record<string, Point>;

const GAVENCIAK_COORDS: Record<string, [number, number]> = {
  "1": [2, -1],
  "2": [3, -2],
  "3": [3, 0],
  "4": [1, -1],
  "5": [1, -2],
  "6": [1, 0],
  "7": [0, -1],
  "8": [-1, -1],
  "9": [-2, -1],
  "10": [-3, -1],
};
const GAVENCIAK_EDGES =
  "1-2,1-3,1-5,1-6,10-9,2-3,2-4,2-5,3-4,3-6,4-5,4-6,4-7,5-7,6-7,7-8,8-9";

const TREE_COORDS: Record<string, [number, number]> = {
  "1": [0, 0],
  "2": [-1, -1],
  "3": [1, -1],
  "4": [0, -2],
  "5": [2, -2],
};
const TREE_EDGES = "1-2,1-3,3-4,3-5";

function canonicalEdges(graph: GraphDoc): string {
  return graph.edges
    .map(([u, v]) => (u < v ? `${u}-${v}` : `${v}-${u}`))
    .sort()
    .join(",");
}

function degreeMap(graph: GraphDoc): Map<string, string[]> {
  const nb = new Map<string, string[]>(graph.nodes.map((n) => [n, []]));
  for (const [u, v] of graph.edges) {
    nb.get(u)?.push(v);
    nb.get(v)?.push(u);
  }
  return nb;
}

/** Endpoint-to-endpoint walk when the graph is a simple path, else null. */
function pathOrder(graph: GraphDoc): string[] | null {
  if (graph.edges.length !== graph.nodes.length - 1) return null;
  const nb = degreeMap(graph);
  const ends = graph.nodes.filter((n) => (nb.get(n) ?? []).length === 1);
  if (ends.length !== 2) return null;
  if (graph.nodes.some((n) => (nb.get(n) ?? []).length > 2)) return null;
  const order = [ends[0]];
  let prev = "";
  while (order.length < graph.nodes.length) {
    const here = order[order.length - 1];
    const next = (nb.get(here) ?? []).find((m) => m !== prev);
    if (next === undefined) return null;
    prev = here;
    order.push(next);
  }
  return order;
}

/** Vertex order around the rim when the graph is a single cycle, else null. */
function cycleOrder(graph: GraphDoc): string[] | null {
  if (graph.edges.length !== graph.nodes.length) return null;
  const nb = degreeMap(graph);
  if (graph.nodes.some((n) => (nb.get(n) ?? []).length !== 2)) return null;
  const order = [graph.nodes[0]];
  let prev = "";
  while (order.length < graph.nodes.length) {
    const here = order[order.length - 1];
    const next = (nb.get(here) ?? []).find((m) => m !== prev);
    if (next === undefined || next === order[0]) return null;
    prev = here;
    order.push(next);
  }
  return order;
}

function hashString(text: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < text.length; i++) {
    h = Math.imul(h ^ text.charCodeAt(i), 16777619) >>> 0;
  }
  return h >>> 0;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function forceDirected(graph: GraphDoc): Layout {
  const n = graph.nodes.length;
  const rand = mulberry32(hashString([...graph.nodes].sort().join("|")));
  const pos = new Map<string, Point>(
    graph.nodes.map((node) => [
      node,
      { x: rand() * 2 - 1, y: rand() * 2 - 1 },
    ]),
  );
  const k = Math.sqrt(4.0 / n);
  let temperature = 0.4;
  for (let iter = 0; iter < 200; iter++) {
    const disp = new Map<string, Point>(
      graph.nodes.map((node) => [node, { x: 0, y: 0 }]),
    );
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const a = pos.get(graph.nodes[i])!;
        const b = pos.get(graph.nodes[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-9) {
          dx = 1e-4 * (i - j);
          dy = 1e-4;
          dist = Math.hypot(dx, dy);
        }
        const repulse = (k * k) / dist;
        const da = disp.get(graph.nodes[i])!;
        const db = disp.get(graph.nodes[j])!;
        da.x += (dx / dist) * repulse;
        da.y += (dy / dist) * repulse;
        db.x -= (dx / dist) * repulse;
        db.y -= (dy / dist) * repulse;
      }
    }
    for (const [u, v] of graph.edges) {
      const a = pos.get(u)!;
      const b = pos.get(v)!;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-9);
      const attract = (dist * dist) / k;
      const da = disp.get(u)!;
      const db = disp.get(v)!;
      da.x -= (dx / dist) * attract;
      da.y -= (dy / dist) * attract;
      db.x += (dx / dist) * attract;
      db.y += (dy / dist) * attract;
    }
    for (const node of graph.nodes) {
      const p = pos.get(node)!;
      const d = disp.get(node)!;
      const len = Math.max(Math.hypot(d.x, d.y), 1e-9);
      const step = Math.min(len, temperature);
      p.x += (d.x / len) * step;
      p.y += (d.y / len) * step;
    }
    temperature *= 0.97;
  }
  return Object.fromEntries(pos);
}

/** Scale any raw coordinate set into the unit box, preserving aspect. */
function normalized(raw: Layout): Layout {
  const points = Object.values(raw);
  const minX = Math.min(...points.map((p) => p.x));
  const maxX = Math.max(...points.map((p) => p.x));
  const minY = Math.min(...points.map((p) => p.y));
  const maxY = Math.max(...points.map((p) => p.y));
  const span = Math.max(maxX - minX, maxY - minY, 1e-9);
  const offX = (1 - (maxX - minX) / span) / 2;
  const offY = (1 - (maxY - minY) / span) / 2;
  return Object.fromEntries(
    Object.entries(raw).map(([node, p]) => [
      node,
      { x: offX + (p.x - minX) / span, y: offY + (p.y - minY) / span },
    ]),
  );
}

function fromTable(table: Record<string, [number, number]>): Layout {
  // Screen y grows downward; the hand-tuned tables use upward y.
  return Object.fromEntries(
    Object.entries(table).map(([node, [x, y]]) => [node, { x, y: -y }]),
  );
}

export function nodeLayout(graph: GraphDoc): Layout {
  const edges = canonicalEdges(graph);
  const labels = [...graph.nodes].sort().join(",");
  if (labels === "1,10,2,3,4,5,6,7,8,9" && edges === GAVENCIAK_EDGES) {
    return normalized(fromTable(GAVENCIAK_COORDS));
  }
  if (labels === "1,2,3,4,5" && edges === TREE_EDGES) {
    return normalized(fromTable(TREE_COORDS));
  }
  const path = pathOrder(graph);
  if (path) {
    return normalized(
      Object.fromEntries(path.map((node, i) => [node, { x: i, y: 0 }])),
    );
  }
  const cycle = cycleOrder(graph);
  if (cycle) {
    const m = cycle.length;
    return normalized(
      Object.fromEntries(
        cycle.map((node, i) => [
          node,
          {
            x: Math.cos((2 * Math.PI * i) / m - Math.PI / 2),
            y: Math.sin((2 * Math.PI * i) / m - Math.PI / 2),
          },
        ]),
      ),
    );
  }
  return normalized(forceDirected(graph));
}
