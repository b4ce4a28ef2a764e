/** Thin typed wrapper over the play service's HTTP+JSON API.
 *
 * All game knowledge (legal moves, values, transitions) comes from these
 * responses; the client never recomputes any of it.
 */

import type {
  CreateSessionRequest,
  HumanMove,
  MoveDoc,
  SessionDoc,
  SolutionDoc,
  StateDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class GameClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    let doc: unknown = null;
    try {
      doc = text ? JSON.parse(text) : null;
    } catch {
      doc = null;
    }
    if (!response.ok) {
      const detail =
        doc && typeof doc === "object" && "detail" in doc
          ? String((doc as { detail: unknown }).detail)
          : text || response.statusText;
      throw new ApiError(response.status, detail);
    }
    return doc as T;
  }

  createSession(req: CreateSessionRequest): Promise<SessionDoc> {
    return this.request<SessionDoc>("POST", "/sessions", req);
  }

  submitMove(
    sessionId: string,
    move: HumanMove,
    round: number,
  ): Promise<MoveDoc> {
    return this.request<MoveDoc>("POST", `/sessions/${sessionId}/moves`, {
      move,
      round,
    });
  }

  state(sessionId: string): Promise<StateDoc> {
    return this.request<StateDoc>("GET", `/sessions/${sessionId}`);
  }

  solution(spec: string, cops = 1, tol?: number): Promise<SolutionDoc> {
    const params = new URLSearchParams({ cops: String(cops) });
    if (tol !== undefined) params.set("tol", String(tol));
    return this.request<SolutionDoc>(
      "GET",
      `/graphs/${encodeURIComponent(spec)}/solution?${params}`,
    );
  }
}
