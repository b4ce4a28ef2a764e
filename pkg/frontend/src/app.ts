/** Game flow controller: owns the session, the board, and the HUD.
 *
 * One move request is in flight at a time — input is disabled while a round
 * is pending — and the engine's move for a round is only ever known from
 * the response to the human's own submission.
 */

import { ApiError, GameClient } from "./api.js";
import { Board } from "./board.js";
import {
  formatValue,
  type CreateSessionRequest,
  type HumanMove,
  type StateDoc,
  type WireValue,
} from "./types.js";

export interface AppOptions {
  /** Round animation length; tests run with 0. */
  animationMs?: number;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  role: string,
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.setAttribute("data-role", role);
  if (text) node.textContent = text;
  return node;
}

export class App {
  readonly banner: HTMLElement;
  readonly errorBox: HTMLElement;
  readonly roundCounter: HTMLElement;
  readonly inspectorToggle: HTMLButtonElement;
  readonly reloadButton: HTMLButtonElement;
  readonly log: HTMLElement;
  readonly svg: SVGSVGElement;

  board: Board | null = null;
  private sessionId = "";
  private humanSide: "C" | "R" = "R";
  private cops = 1;
  private round = 0;
  private captured = false;
  private pending = false;
  private inspectorOn = false;
  private selection: string[] = [];
  private lastState: StateDoc | null = null;
  private initialValue: WireValue = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: GameClient,
    private readonly options: AppOptions = {},
  ) {
    this.banner = el("div", "banner");
    this.errorBox = el("div", "error");
    this.errorBox.hidden = true;
    this.roundCounter = el("span", "round", "round 0");
    this.inspectorToggle = el("button", "inspector-toggle",
      "strategy inspector");
    this.inspectorToggle.addEventListener("click", () => {
      void this.toggleInspector();
    });
    this.reloadButton = el("button", "reload", "reload session");
    this.reloadButton.hidden = true;
    this.reloadButton.addEventListener("click", () => {
      void this.refresh();
    });
    this.log = el("div", "log");
    this.svg = document.createElementNS(
      "http://www.w3.org/2000/svg",
      "svg",
    ) as SVGSVGElement;
    this.svg.setAttribute("data-role", "board");

    const hud = el("div", "hud");
    hud.append(this.roundCounter, this.inspectorToggle, this.reloadButton);
    root.append(this.banner, this.errorBox, hud, this.svg, this.log);
  }

  get currentRound(): number {
    return this.round;
  }

  get isCaptured(): boolean {
    return this.captured;
  }

  get isPending(): boolean {
    return this.pending;
  }

  get state(): StateDoc | null {
    return this.lastState;
  }

  async newGame(req: CreateSessionRequest): Promise<boolean> {
    this.errorBox.hidden = true;
    this.errorBox.textContent = "";
    try {
      const session = await this.client.createSession(req);
      this.sessionId = session.session_id;
      this.humanSide = session.human_side;
      this.cops = session.cops;
      this.round = session.round;
      this.captured = session.captured;
      this.selection = [];
      this.initialValue = session.value_at_position;
      this.board = new Board(this.svg, session.graph, (label) => {
        void this.clickNode(label);
      });
      this.banner.textContent =
        "expected rounds to capture under optimal play: " +
        formatValue(session.value_at_position);
      this.log.replaceChildren();
      await this.refresh();
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        let message = err.detail;
        if (err.status === 409 && /cop/.test(err.detail)) {
          message += " — try again with more cops";
        }
        this.showError(message);
        return false;
      }
      throw err;
    }
  }

  private showError(message: string): void {
    this.errorBox.textContent = message;
    this.errorBox.hidden = false;
  }

  /** Nodes to highlight: exactly the service's legal moves, narrowed to
   * continuations of the partial cop selection. */
  legalTargets(): Set<string> {
    if (!this.lastState || this.captured) return new Set();
    if (this.humanSide === "R") {
      return new Set(this.lastState.legal_moves as string[]);
    }
    const depth = this.selection.length;
    const targets = new Set<string>();
    for (const move of this.lastState.legal_moves as string[][]) {
      if (this.selection.every((node, i) => move[i] === node)) {
        targets.add(move[depth]);
      }
    }
    return targets;
  }

  async clickNode(label: string): Promise<void> {
    if (this.pending || this.captured || !this.lastState) return;
    if (!this.legalTargets().has(label)) return;
    if (this.humanSide === "R") {
      await this.submit(label);
      return;
    }
    this.selection.push(label);
    if (this.selection.length === this.cops) {
      const move = this.selection;
      this.selection = [];
      await this.submit(move);
    } else {
      this.renderBoard();
    }
  }

  private async submit(move: HumanMove): Promise<void> {
    if (this.pending || !this.board) return;
    this.pending = true;
    this.root.classList.add("busy");
    try {
      const doc = await this.client.submitMove(
        this.sessionId,
        move,
        this.round,
      );
      this.round = doc.round;
      this.roundCounter.textContent = `round ${this.round}`;
      const line = document.createElement("div");
      line.setAttribute("data-role", "log-line");
      const engine = Array.isArray(doc.engine_move)
        ? doc.engine_move.join("+")
        : doc.engine_move;
      const human = Array.isArray(doc.human_move)
        ? doc.human_move.join("+")
        : doc.human_move;
      line.textContent =
        `round ${doc.round}: you → ${human}, engine → ${engine}` +
        (doc.en_passant ? " (en passant)" : doc.captured ? " (capture)" : "");
      this.log.append(line);
      await this.board.animateRound(
        doc,
        this.humanSide,
        this.options.animationMs ?? 450,
      );
      if (doc.captured) {
        this.captured = true;
        this.banner.textContent =
          `captured in ${doc.round} rounds ` +
          `(predicted ${formatValue(this.initialValue)})`;
      }
      await this.refresh();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.reloadButton.hidden = false;
        this.showError(`${err.detail} — reload to resync`);
      } else if (err instanceof ApiError) {
        this.showError(err.detail);
      } else {
        throw err;
      }
    } finally {
      this.pending = false;
      this.root.classList.remove("busy");
    }
  }

  async refresh(): Promise<void> {
    if (!this.sessionId || !this.board) return;
    const state = await this.client.state(this.sessionId);
    this.lastState = state;
    this.round = state.round;
    this.captured = state.captured;
    this.roundCounter.textContent = `round ${state.round}`;
    this.reloadButton.hidden = true;
    this.renderBoard();
  }

  async toggleInspector(): Promise<void> {
    this.inspectorOn = !this.inspectorOn;
    this.renderBoard();
  }

  private renderBoard(): void {
    if (!this.board || !this.lastState) return;
    this.board.render({
      position: this.lastState.position,
      legalTargets: this.legalTargets(),
      valueRow: this.lastState.value_row,
      engineMix:
        this.inspectorOn && !this.captured
          ? this.lastState.engine_mix
          : null,
      captured: this.captured,
    });
  }
}
