/** SVG board: arena graph, tokens, legal-move highlights, value
 * annotations, and the strategy overlay.
 *
 * The board never decides anything about the game: every highlight, value,
 * and token position it draws is handed to it from service responses.
 */

import { nodeLayout, type Layout, type Point } from "./layout.js";
import {
  formatValue,
  type GraphDoc,
  type MixEntry,
  type MoveDoc,
  type PositionDoc,
  type WireValue,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 480;
const PAD = 70;
const NODE_RADIUS = 22;

export interface BoardState {
  position: PositionDoc;
  /** Node labels to highlight; the app derives them from legal_moves. */
  legalTargets: ReadonlySet<string>;
  /** Per-node values for the current cop placement, or null to hide. */
  valueRow: Record<string, WireValue> | null;
  /** Engine mix for the overlay, or null when the overlay is off. */
  engineMix: MixEntry[] | null;
  captured: boolean;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

/** Marginal probability that a node is occupied by the mixed move. */
export function nodeMarginals(
  mix: MixEntry[],
  nodes: string[],
): Record<string, number> {
  const marginal: Record<string, number> = Object.fromEntries(
    nodes.map((n) => [n, 0]),
  );
  for (const { move, prob } of mix) {
    const touched = Array.isArray(move) ? new Set(move) : new Set([move]);
    for (const node of touched) {
      if (node in marginal) marginal[node] += prob;
    }
  }
  return marginal;
}

export class Board {
  private readonly layout: Layout;
  private readonly pixel: Record<string, Point>;
  private readonly tokenLayer: SVGGElement;
  private readonly effectLayer: SVGGElement;
  private readonly badgeLayer: SVGGElement;
  private readonly nodeGroups = new Map<string, SVGGElement>();
  private readonly valueTexts = new Map<string, SVGTextElement>();

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly graph: GraphDoc,
    onNodeClick: (label: string) => void,
  ) {
    this.layout = nodeLayout(graph);
    this.pixel = Object.fromEntries(
      Object.entries(this.layout).map(([node, p]) => [
        node,
        {
          x: PAD + p.x * (WIDTH - 2 * PAD),
          y: PAD + p.y * (HEIGHT - 2 * PAD),
        },
      ]),
    );
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.replaceChildren();

    const edgeLayer = svgEl("g", { class: "edges" });
    for (const [u, v] of graph.edges) {
      const a = this.pixel[u];
      const b = this.pixel[v];
      edgeLayer.append(
        svgEl("line", {
          class: "edge",
          "data-edge": `${u}--${v}`,
          x1: String(a.x),
          y1: String(a.y),
          x2: String(b.x),
          y2: String(b.y),
        }),
      );
    }
    svg.append(edgeLayer);

    const nodeLayer = svgEl("g", { class: "nodes" });
    for (const node of graph.nodes) {
      const p = this.pixel[node];
      const group = svgEl("g", {
        class: "node",
        "data-node": node,
        transform: `translate(${p.x},${p.y})`,
      });
      group.append(svgEl("circle", { r: String(NODE_RADIUS) }));
      const label = svgEl("text", {
        class: "node-label",
        "text-anchor": "middle",
        dy: "0.35em",
      });
      label.textContent = node;
      group.append(label);
      const value = svgEl("text", {
        class: "value-annotation",
        "text-anchor": "middle",
        y: String(NODE_RADIUS + 16),
      });
      group.append(value);
      group.addEventListener("click", () => onNodeClick(node));
      nodeLayer.append(group);
      this.nodeGroups.set(node, group);
      this.valueTexts.set(node, value);
    }
    svg.append(nodeLayer);

    this.badgeLayer = svgEl("g", { class: "badges" });
    svg.append(this.badgeLayer);
    this.effectLayer = svgEl("g", { class: "effects" });
    svg.append(this.effectLayer);
    this.tokenLayer = svgEl("g", { class: "tokens" });
    svg.append(this.tokenLayer);
  }

  nodeAt(label: string): SVGGElement | undefined {
    return this.nodeGroups.get(label);
  }

  /** Redraw to mirror a confirmed server state. */
  render(state: BoardState): void {
    this.svg.classList.toggle("captured", state.captured);
    for (const [node, group] of this.nodeGroups) {
      group.classList.toggle("legal", state.legalTargets.has(node));
      const text = this.valueTexts.get(node)!;
      text.textContent =
        state.valueRow === null ? "" : formatValue(state.valueRow[node]);
    }
    this.renderBadges(state);
    this.renderTokens(state.position);
    if (!state.captured) this.effectLayer.replaceChildren();
  }

  private renderBadges(state: BoardState): void {
    this.badgeLayer.replaceChildren();
    if (state.engineMix === null || state.captured) return;
    const marginal = nodeMarginals(state.engineMix, this.graph.nodes);
    for (const node of this.graph.nodes) {
      const p = this.pixel[node];
      const badge = svgEl("g", {
        class: "badge",
        "data-node": node,
        transform: `translate(${p.x + NODE_RADIUS + 4},${p.y - NODE_RADIUS - 4})`,
      });
      const text = svgEl("text", { "text-anchor": "middle" });
      text.textContent = marginal[node].toFixed(2);
      badge.append(svgEl("rect", { x: "-16", y: "-11", width: "32", height: "16", rx: "8" }));
      badge.append(text);
      this.badgeLayer.append(badge);
    }
    const total = state.engineMix.reduce((s, e) => s + e.prob, 0);
    const sum = svgEl("text", {
      class: "mix-sum",
      "data-role": "mix-sum",
      x: String(WIDTH - 12),
      y: "24",
      "text-anchor": "end",
    });
    sum.textContent = `Σ = ${total.toFixed(2)}`;
    this.badgeLayer.append(sum);
  }

  private renderTokens(position: PositionDoc): void {
    this.tokenLayer.replaceChildren();
    position.cops.forEach((node, i) => {
      this.tokenLayer.append(this.makeToken(`cop-${i}`, "cop", node, "C"));
    });
    this.tokenLayer.append(
      this.makeToken("robber", "robber", position.robber, "R"),
    );
  }

  private makeToken(
    id: string,
    kind: "cop" | "robber",
    node: string,
    glyph: string,
  ): SVGGElement {
    const p = this.pixel[node];
    const token = svgEl("g", {
      class: `token ${kind}`,
      "data-token": id,
      "data-at": node,
      transform: `translate(${p.x},${p.y})`,
    });
    token.append(svgEl("circle", { r: "11", cy: "-6" }));
    const text = svgEl("text", {
      "text-anchor": "middle",
      y: "-2",
    });
    text.textContent = glyph;
    token.append(text);
    return token;
  }

  private moveToken(id: string, node: string): void {
    const token = this.tokenLayer.querySelector(
      `[data-token="${id}"]`,
    ) as SVGGElement | null;
    if (!token) return;
    const p = this.pixel[node];
    token.setAttribute("transform", `translate(${p.x},${p.y})`);
    token.setAttribute("data-at", node);
  }

  /** Play out one confirmed round: both sides' tokens start moving in the
   * same tick, and an en-passant round drops a collision marker mid-edge. */
  async animateRound(
    move: MoveDoc,
    humanSide: "C" | "R",
    durationMs: number,
  ): Promise<void> {
    const copMove = (
      humanSide === "C" ? move.human_move : move.engine_move
    ) as string[];
    const robberMove = (
      humanSide === "R" ? move.human_move : move.engine_move
    ) as string;

    this.svg.classList.add("animating");
    this.svg.setAttribute("data-concurrent", "true");
    copMove.forEach((node, i) => this.moveToken(`cop-${i}`, node));
    this.moveToken("robber", robberMove);

    if (move.en_passant) {
      const from = move.position_before.robber;
      const a = this.pixel[from];
      const b = this.pixel[robberMove];
      const collision = svgEl("g", {
        class: "collision en-passant",
        transform: `translate(${(a.x + b.x) / 2},${(a.y + b.y) / 2})`,
      });
      collision.append(svgEl("circle", { r: "18", class: "flash" }));
      const label = svgEl("text", {
        class: "collision-label",
        "text-anchor": "middle",
        y: "-26",
      });
      label.textContent = "en passant capture";
      collision.append(label);
      this.effectLayer.append(collision);
    }

    if (durationMs > 0) {
      await new Promise((resolve) => setTimeout(resolve, durationMs));
    }
    this.svg.classList.remove("animating");
  }
}
