/** Page bootstrap: wires the new-game form to the controller. */

import { GameClient } from "./api.js";
import { App } from "./app.js";
import type { CreateSessionRequest } from "./types.js";

function input(id: string): HTMLInputElement {
  return document.getElementById(id) as HTMLInputElement;
}

export function bootstrap(): App {
  const root = document.getElementById("app") as HTMLElement;
  const app = new App(root, new GameClient(""));

  const form = document.getElementById("new-game") as HTMLFormElement;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const req: CreateSessionRequest = {
      graph: input("graph-spec").value.trim(),
      cops: Number(input("cop-count").value) || 1,
      human_side: (
        document.getElementById("side") as HTMLSelectElement
      ).value as "C" | "R",
      force: input("force").checked,
    };
    const seed = input("seed").value.trim();
    if (seed !== "") req.seed = Number(seed);
    const copsAt = input("start-cops").value.trim();
    const robberAt = input("start-robber").value.trim();
    if (copsAt && robberAt) {
      req.start = { cops: copsAt.split(/[\s,+]+/), robber: robberAt };
    } else {
      req.start = "random";
    }
    void app.newGame(req);
  });
  return app;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  bootstrap();
}
