/** JSON payload shapes of the play service. */

/** Values come over the wire as numbers, with "inf" spelling no-capture. */
export type WireValue = number | "inf";

export interface GraphDoc {
  name: string | null;
  nodes: string[];
  edges: [string, string][];
}

export interface PositionDoc {
  cops: string[];
  robber: string;
}

/** Robber moves are bare node labels; cop moves are one label per cop. */
export type HumanMove = string | string[];

export interface CreateSessionRequest {
  graph?: string;
  edges?: string[][];
  cops?: number;
  human_side?: "C" | "R";
  start?: "random" | { cops: string[]; robber: string };
  seed?: number;
  force?: boolean;
  tol?: number;
}

export interface SessionDoc {
  session_id: string;
  graph: GraphDoc;
  cops: number;
  human_side: "C" | "R";
  round: number;
  position: PositionDoc;
  value_at_position: WireValue;
  legal_moves: HumanMove[];
  captured: boolean;
}

export interface MoveDoc {
  round: number;
  position_before: PositionDoc;
  human_move: HumanMove;
  engine_move: HumanMove;
  position_after: PositionDoc;
  captured: boolean;
  en_passant: boolean;
  value_at_position: WireValue;
  legal_moves: HumanMove[];
}

export interface MixEntry {
  move: string | string[];
  prob: number;
}

export interface WhatIfOutcome {
  engine_move: string | string[];
  position: PositionDoc;
  captured: boolean;
  en_passant: boolean;
  value: WireValue;
}

export interface WhatIfEntry {
  human_move: HumanMove;
  outcomes: WhatIfOutcome[];
}

export interface HistoryRecord {
  round: number;
  position_before: PositionDoc;
  human_move: HumanMove;
  engine_move: HumanMove;
  position_after: PositionDoc;
  captured: boolean;
  en_passant: boolean;
}

export interface StateDoc {
  session_id: string;
  graph: GraphDoc;
  cops: number;
  human_side: "C" | "R";
  round: number;
  position: PositionDoc;
  captured: boolean;
  en_passant: boolean;
  capture_round: number | null;
  value_at_position: WireValue;
  value_row: Record<string, WireValue>;
  legal_moves: HumanMove[];
  engine_mix: MixEntry[];
  what_if: WhatIfEntry[];
  history: HistoryRecord[];
}

export interface SolutionDoc {
  values: unknown;
  strategies: unknown;
}

/** Render an on-the-wire value for people: two decimals, infinity sign. */
export function formatValue(v: WireValue): string {
  return v === "inf" ? "∞" : v.toFixed(2);
}
