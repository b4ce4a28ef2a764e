/** Shared test fixtures: an in-memory scripted service and K3 documents. */

import type { FetchLike } from "../src/api.js";
import type {
  GraphDoc,
  MoveDoc,
  SessionDoc,
  StateDoc,
} from "../src/types.js";

export const K3: GraphDoc = {
  name: "clique:3",
  nodes: ["1", "2", "3"],
  edges: [["1", "2"], ["1", "3"], ["2", "3"]],
};

export function k3Session(overrides: Partial<SessionDoc> = {}): SessionDoc {
  return {
    session_id: "s1",
    graph: K3,
    cops: 1,
    human_side: "R",
    round: 0,
    position: { cops: ["3"], robber: "1" },
    value_at_position: 2.0,
    legal_moves: ["1", "2", "3"],
    captured: false,
    ...overrides,
  };
}

export function k3State(overrides: Partial<StateDoc> = {}): StateDoc {
  return {
    session_id: "s1",
    graph: K3,
    cops: 1,
    human_side: "R",
    round: 0,
    position: { cops: ["3"], robber: "1" },
    captured: false,
    en_passant: false,
    capture_round: null,
    value_at_position: 2.0,
    value_row: { "1": 2.0, "2": 2.0, "3": 0.0 },
    legal_moves: ["1", "2", "3"],
    engine_mix: [
      { move: ["1"], prob: 0.5 },
      { move: ["2"], prob: 0.5 },
    ],
    what_if: [],
    history: [],
    ...overrides,
  };
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface RecordedCall {
  method: string;
  path: string;
  body?: unknown;
}

/** Replays a canned script of move responses and tracks session state the
 * way the real service would. */
export class ScriptedService {
  readonly calls: RecordedCall[] = [];
  private gate: Promise<void> | null = null;
  private release: (() => void) | null = null;
  private state: StateDoc;

  constructor(
    private readonly session: SessionDoc,
    state: StateDoc,
    private readonly script: MoveDoc[],
    private readonly createStatus = 200,
    private readonly createError = "",
  ) {
    this.state = state;
  }

  /** Make POST /moves hang until releaseMoves() is called. */
  holdMoves(): void {
    this.gate = new Promise((resolve) => {
      this.release = resolve;
    });
  }

  releaseMoves(): void {
    this.release?.();
    this.gate = null;
    this.release = null;
  }

  moveCalls(): RecordedCall[] {
    return this.calls.filter((c) => c.path.endsWith("/moves"));
  }

  currentState(): StateDoc {
    return this.state;
  }

  readonly fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.calls.push({ method, path: url, body });

    if (method === "POST" && url === "/sessions") {
      if (this.createStatus !== 200) {
        return json(this.createStatus, { detail: this.createError });
      }
      return json(200, this.session);
    }
    if (method === "POST" && url.endsWith("/moves")) {
      if (this.gate) await this.gate;
      const doc = this.script.shift();
      if (!doc) return json(409, { detail: "session already ended in capture" });
      this.state = {
        ...this.state,
        round: doc.round,
        position: doc.position_after,
        captured: doc.captured,
        en_passant: doc.en_passant,
        capture_round: doc.captured ? doc.round : null,
        value_at_position: doc.value_at_position,
        legal_moves: doc.legal_moves,
        engine_mix: doc.captured ? [] : this.state.engine_mix,
        history: [...this.state.history, doc],
      };
      return json(200, doc);
    }
    if (method === "GET" && url.startsWith("/sessions/")) {
      return json(200, this.state);
    }
    return json(404, { detail: "unknown session" });
  };
}

/** A non-capture K3 round document. */
export function k3Round(
  round: number,
  humanMove: string,
  engineMove: string,
  after: { cops: string[]; robber: string },
  captured = false,
): MoveDoc {
  return {
    round,
    position_before: { cops: ["3"], robber: "1" },
    human_move: humanMove,
    engine_move: [engineMove],
    position_after: after,
    captured,
    en_passant: false,
    value_at_position: captured ? 0.0 : 2.0,
    legal_moves: captured ? [] : ["1", "2", "3"],
  };
}
