import { beforeEach, describe, expect, it } from "vitest";

import { GameClient } from "../src/api.js";
import { App } from "../src/app.js";
import type { MoveDoc } from "../src/types.js";
import {
  k3Round,
  k3Session,
  k3State,
  ScriptedService,
} from "./helpers.js";

function makeApp(service: ScriptedService) {
  const root = document.createElement("div");
  document.body.append(root);
  const app = new App(root, new GameClient("", service.fetch), {
    animationMs: 0,
  });
  return { app, root };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("game flow", () => {
  it("plays a scripted session through to capture and freezes", async () => {
    const service = new ScriptedService(k3Session(), k3State(), [
      k3Round(1, "1", "2", { cops: ["2"], robber: "1" }),
      k3Round(2, "1", "1", { cops: ["1"], robber: "1" }, true),
    ]);
    const { app } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "R" });
    expect(app.currentRound).toBe(0);
    expect(app.state?.value_at_position).toBe(2.0);

    await app.clickNode("1");
    expect(app.currentRound).toBe(1);
    expect(app.isCaptured).toBe(false);

    await app.clickNode("1");
    expect(app.currentRound).toBe(2);
    expect(app.isCaptured).toBe(true);
    expect(document.querySelector("svg")?.classList.contains("captured"))
      .toBe(true);
    expect(
      document.querySelector('[data-role="banner"]')?.textContent,
    ).toBe("captured in 2 rounds (predicted 2.00)");

    // Post-capture clicks are ignored: no further move requests.
    const movesBefore = service.moveCalls().length;
    await app.clickNode("1");
    expect(service.moveCalls()).toHaveLength(movesBefore);
  });

  it("keeps a single move request in flight and disables input", async () => {
    const service = new ScriptedService(k3Session(), k3State(), [
      k3Round(1, "1", "2", { cops: ["2"], robber: "1" }),
    ]);
    const { app, root } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "R" });

    service.holdMoves();
    const first = app.clickNode("1");
    expect(app.isPending).toBe(true);
    expect(root.classList.contains("busy")).toBe(true);

    await app.clickNode("2"); // swallowed while the round is pending
    expect(service.moveCalls()).toHaveLength(1);

    service.releaseMoves();
    await first;
    expect(app.isPending).toBe(false);
    expect(root.classList.contains("busy")).toBe(false);
    expect(service.moveCalls()).toHaveLength(1);
  });

  it("ignores clicks on nodes outside the legal set", async () => {
    const service = new ScriptedService(
      k3Session({ legal_moves: ["1", "2"] }),
      k3State({ legal_moves: ["1", "2"] }),
      [],
    );
    const { app } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "R" });
    await app.clickNode("3");
    expect(service.moveCalls()).toHaveLength(0);
  });

  it("does not reveal any engine move before the human submits", async () => {
    const service = new ScriptedService(k3Session(), k3State(), [
      k3Round(1, "1", "2", { cops: ["2"], robber: "1" }),
    ]);
    const { app } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "R" });
    expect(document.querySelectorAll('[data-role="log-line"]')).toHaveLength(0);
    await app.clickNode("1");
    const lines = document.querySelectorAll('[data-role="log-line"]');
    expect(lines).toHaveLength(1);
    expect(lines[0].textContent).toContain("engine → 2");
  });

  it("assembles a joint cop move from successive clicks", async () => {
    const session = k3Session({
      human_side: "C",
      cops: 2,
      position: { cops: ["1", "2"], robber: "3" },
      legal_moves: [["1", "2"], ["1", "3"], ["2", "3"]],
    });
    const state = k3State({
      human_side: "C",
      cops: 2,
      position: { cops: ["1", "2"], robber: "3" },
      legal_moves: [["1", "2"], ["1", "3"], ["2", "3"]],
      engine_mix: [{ move: "3", prob: 1.0 }],
    });
    const service = new ScriptedService(session, state, [
      {
        round: 1,
        position_before: { cops: ["1", "2"], robber: "3" },
        human_move: ["1", "3"],
        engine_move: "3",
        position_after: { cops: ["1", "3"], robber: "3" },
        captured: true,
        en_passant: false,
        value_at_position: 0.0,
        legal_moves: [],
      } as MoveDoc,
    ]);
    const { app } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "C", cops: 2 });

    expect(app.legalTargets()).toEqual(new Set(["1", "2"]));
    await app.clickNode("1");
    // Prefix chosen: continuations are 1,2 or 1,3.
    expect(app.legalTargets()).toEqual(new Set(["2", "3"]));
    expect(service.moveCalls()).toHaveLength(0);
    await app.clickNode("3");
    expect(service.moveCalls()).toHaveLength(1);
    expect(service.moveCalls()[0].body).toEqual({
      move: ["1", "3"],
      round: 0,
    });
    expect(app.isCaptured).toBe(true);
  });

  it("surfaces a cop-shortage rejection with a raise-cops prompt", async () => {
    const service = new ScriptedService(
      k3Session(),
      k3State(),
      [],
      409,
      "1 cop(s) cannot force capture on this graph; raise cops or pass force",
    );
    const { app } = makeApp(service);
    const ok = await app.newGame({ graph: "cycle:4", human_side: "R" });
    expect(ok).toBe(false);
    const error = document.querySelector('[data-role="error"]') as HTMLElement;
    expect(error.hidden).toBe(false);
    expect(error.textContent).toContain("more cops");
  });

  it("offers a reload prompt on a stale-round conflict", async () => {
    const service = new ScriptedService(k3Session(), k3State(), []);
    const { app } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "R" });
    // Script exhausted → service answers 409.
    await app.clickNode("1");
    const reload = document.querySelector(
      '[data-role="reload"]',
    ) as HTMLButtonElement;
    expect(reload.hidden).toBe(false);
    expect(
      document.querySelector('[data-role="error"]')?.textContent,
    ).toContain("resync");
    reload.dispatchEvent(new Event("click"));
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(reload.hidden).toBe(true);
  });

  it("toggles the strategy inspector overlay", async () => {
    const service = new ScriptedService(k3Session(), k3State(), []);
    const { app } = makeApp(service);
    await app.newGame({ graph: "clique:3", human_side: "R" });
    expect(document.querySelectorAll(".badge")).toHaveLength(0);
    await app.toggleInspector();
    const badges = Object.fromEntries(
      [...document.querySelectorAll(".badge")].map((el) => [
        el.getAttribute("data-node"),
        el.querySelector("text")?.textContent,
      ]),
    );
    expect(badges).toEqual({ "1": "0.50", "2": "0.50", "3": "0.00" });
    expect(document.querySelector('[data-role="mix-sum"]')?.textContent)
      .toBe("Σ = 1.00");
    await app.toggleInspector();
    expect(document.querySelectorAll(".badge")).toHaveLength(0);
  });
});
