import { describe, expect, it } from "vitest";

import { nodeLayout } from "../src/layout.js";
import type { GraphDoc } from "../src/types.js";

const GAVENCIAK: GraphDoc = {
  name: "gavenciak",
  nodes: ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"],
  edges: [
    ["1", "2"], ["1", "3"], ["1", "5"], ["1", "6"], ["2", "3"],
    ["2", "4"], ["2", "5"], ["3", "4"], ["3", "6"], ["4", "5"],
    ["4", "6"], ["4", "7"], ["5", "7"], ["6", "7"], ["7", "8"],
    ["8", "9"], ["9", "10"],
  ],
};

const TREE: GraphDoc = {
  name: null,
  nodes: ["1", "2", "3", "4", "5"],
  edges: [["1", "2"], ["1", "3"], ["3", "4"], ["3", "5"]],
};

function path(n: number): GraphDoc {
  const nodes = Array.from({ length: n }, (_, i) => String(i + 1));
  return {
    name: `path:${n}`,
    nodes,
    edges: nodes.slice(1).map((v, i) => [nodes[i], v]),
  };
}

function cycle(n: number): GraphDoc {
  const p = path(n);
  return { ...p, edges: [...p.edges, [String(n), "1"]] };
}

describe("nodeLayout", () => {
  it("pins the ten-node demo arena to its hand-tuned shape", () => {
    const layout = nodeLayout(GAVENCIAK);
    // Node 10 is the far-left end of the tail; node 2 and 3 the right edge.
    expect(layout["10"].x).toBe(0);
    expect(layout["2"].x).toBe(1);
    expect(layout["3"].x).toBe(1);
    // 3 sits above 1, which sits above 2.
    expect(layout["3"].y).toBeLessThan(layout["1"].y);
    expect(layout["1"].y).toBeLessThan(layout["2"].y);
  });

  it("recognizes the five-node tree regardless of the name field", () => {
    const layout = nodeLayout(TREE);
    expect(layout["1"].y).toBeLessThan(layout["4"].y);
    expect(layout["2"].x).toBeLessThan(layout["3"].x);
    expect(layout["5"].x).toBeGreaterThan(layout["4"].x);
  });

  it("lays paths on a straight line in walk order", () => {
    const layout = nodeLayout(path(6));
    const ys = new Set(Object.values(layout).map((p) => p.y));
    expect(ys.size).toBe(1);
    const xs = ["1", "2", "3", "4", "5", "6"].map((n) => layout[n].x);
    expect([...xs].sort((a, b) => a - b)).toEqual(xs);
  });

  it("lays cycles on a circle", () => {
    const layout = nodeLayout(cycle(5));
    const points = Object.values(layout);
    const cx = points.reduce((s, p) => s + p.x, 0) / points.length;
    const cy = points.reduce((s, p) => s + p.y, 0) / points.length;
    const radii = points.map((p) =>
      Math.hypot(p.x - cx, p.y - cy).toFixed(6),
    );
    expect(new Set(radii).size).toBe(1);
  });

  it("is deterministic for arbitrary graphs", () => {
    const star: GraphDoc = {
      name: null,
      nodes: ["hub", "a", "b", "c", "d"],
      edges: [["hub", "a"], ["hub", "b"], ["hub", "c"], ["hub", "d"],
              ["a", "b"]],
    };
    const first = nodeLayout(star);
    const second = nodeLayout(star);
    expect(second).toEqual(first);
    // All nodes present, inside the unit box, and pairwise distinct.
    const points = Object.values(first);
    expect(points).toHaveLength(5);
    for (const p of points) {
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThanOrEqual(1);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeLessThanOrEqual(1);
    }
    const keys = new Set(points.map((p) => `${p.x.toFixed(5)}|${p.y.toFixed(5)}`));
    expect(keys.size).toBe(5);
  });
});
