"""HTTP play service.

A session pits a human (cop side or robber side) against the solver's mixed
policy. Both sides commit moves for a round without seeing the other's: the
engine draws from its position-only distribution at submission time, so the
draw never depends on the incoming human move.

Endpoints:
  POST /sessions                  create a session
  POST /sessions/{id}/moves       submit the human move for the current round
  GET  /sessions/{id}             full read-only state + what-if annotations
  GET  /graphs/{spec}/solution    batch export of values + strategies
"""

from __future__ import annotations

import itertools
import math
import threading
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .concurrent_game import (
    MixedStrategyTable,
    ValueTable,
    cccr_step,
    is_capture,
    value_iterate,
)
from .graph import Graph, GraphError, generate, graph_key
from .simulation import MixedTableStrategy
from .turn_based import cop_number


def _num(v: float):
    return "inf" if v == math.inf else v


class CreateSession(BaseModel):
    graph: str | None = None
    edges: list[list[str]] | None = None
    cops: int = 1
    human_side: str = "R"
    start: dict | str | None = None
    seed: int | None = None
    force: bool = False
    tol: float = 1e-2


class SubmitMove(BaseModel):
    move: str | list[str]
    round: int | None = None


@dataclass
class Session:
    id: str
    graph: Graph
    graph_name: str | None
    cops: int
    human_side: str
    position: tuple
    values: ValueTable
    mixes: MixedStrategyTable
    engine: MixedTableStrategy
    rng: np.random.Generator
    round: int = 0
    captured: bool = False
    en_passant: bool = False
    capture_round: int | None = None
    history: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _position_json(p) -> dict:
    return {"cops": list(p[0]), "robber": p[1]}


def _graph_json(g: Graph, name: str | None) -> dict:
    return {
        "name": name,
        "nodes": list(g.labels),
        "edges": [list(e) for e in g.edge_labels()],
    }


def _legal_cop_moves(g: Graph, cops) -> list:
    per_cop = [
        [g.labels[j] for j in g.closed[g.node_id(c)]] for c in cops
    ]
    return [list(jm) for jm in itertools.product(*per_cop)]


def _legal_robber_moves(g: Graph, robber) -> list:
    return [g.labels[j] for j in g.closed[g.node_id(robber)]]


def _legal_human_moves(s: Session) -> list:
    if s.captured:
        return []
    cops, robber = s.position
    if s.human_side == "C":
        return _legal_cop_moves(s.graph, cops)
    return _legal_robber_moves(s.graph, robber)


def _mix_json(dist) -> list:
    return [
        {"move": list(move) if isinstance(move, tuple) else move, "prob": prob}
        for move, prob in dist
    ]


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="copsrobbers play service")

    solutions: dict = {}
    cop_numbers: dict = {}
    sessions: dict[str, Session] = {}
    cache_lock = threading.Lock()

    def solve_cached(g: Graph, cops: int, tol: float):
        key = (graph_key(g), cops, tol)
        with cache_lock:
            hit = solutions.get(key)
        if hit is not None:
            return hit
        vt, mt = value_iterate(g, cops, tol=tol)
        with cache_lock:
            return solutions.setdefault(key, (vt, mt))

    def cop_number_cached(g: Graph, up_to: int):
        key = (graph_key(g), up_to)
        with cache_lock:
            if key in cop_numbers:
                return cop_numbers[key]
        k = cop_number(g, max_cops=up_to)
        with cache_lock:
            return cop_numbers.setdefault(key, k)

    def build_graph(req: CreateSession) -> tuple[Graph, str | None]:
        try:
            if req.graph is not None:
                return generate(req.graph), req.graph
            if req.edges is not None:
                return Graph.from_edges(tuple(e) for e in req.edges), None
        except (GraphError, ValueError, TypeError) as exc:
            raise HTTPException(400, f"invalid graph: {exc}")
        raise HTTPException(400, "request must carry 'graph' or 'edges'")

    def pick_start(req: CreateSession, g: Graph, vt: ValueTable,
                   rng: np.random.Generator) -> tuple:
        if req.start is None or req.start == "random":
            pool = [
                p for p, v in vt.values.items()
                if not is_capture(p) and (req.force or v < math.inf)
            ]
            if not pool:
                raise HTTPException(400, "no eligible start position")
            return pool[int(rng.integers(len(pool)))]
        if not isinstance(req.start, dict):
            raise HTTPException(400, "start must be 'random' or {cops, robber}")
        try:
            cops = tuple(req.start["cops"])
            robber = req.start["robber"]
        except (KeyError, TypeError):
            raise HTTPException(400, "start must carry 'cops' and 'robber'")
        if len(cops) != req.cops:
            raise HTTPException(400, f"start needs exactly {req.cops} cop node(s)")
        for node in (*cops, robber):
            if not g.has_node(node):
                raise HTTPException(400, f"unknown node {node!r} in start")
        p = (cops, robber)
        if is_capture(p):
            raise HTTPException(400, "start position is already a capture")
        if vt.values[p] == math.inf and not req.force:
            raise HTTPException(
                409, "start position is a robber win; pass force to play it anyway"
            )
        return p

    @app.post("/sessions")
    def create_session(req: CreateSession):
        if req.human_side not in ("C", "R"):
            raise HTTPException(400, "human_side must be 'C' or 'R'")
        if req.cops < 1:
            raise HTTPException(400, "cops must be at least 1")
        g, name = build_graph(req)
        if not req.force and cop_number_cached(g, req.cops) is None:
            raise HTTPException(
                409,
                f"{req.cops} cop(s) cannot force capture on this graph; "
                "raise cops or pass force",
            )
        vt, mt = solve_cached(g, req.cops, req.tol)
        rng = np.random.default_rng(req.seed)
        start = pick_start(req, g, vt, rng)
        engine_side = "C" if req.human_side == "R" else "R"
        session = Session(
            id=uuid.uuid4().hex,
            graph=g,
            graph_name=name,
            cops=req.cops,
            human_side=req.human_side,
            position=start,
            values=vt,
            mixes=mt,
            engine=MixedTableStrategy(mt, engine_side, fallback="uniform"),
            rng=rng,
        )
        sessions[session.id] = session
        return {
            "session_id": session.id,
            "graph": _graph_json(g, name),
            "cops": req.cops,
            "human_side": req.human_side,
            "round": 0,
            "position": _position_json(start),
            "value_at_position": _num(vt.values[start]),
            "legal_moves": _legal_human_moves(session),
            "captured": False,
        }

    def get_session(session_id: str) -> Session:
        s = sessions.get(session_id)
        if s is None:
            raise HTTPException(404, "unknown session")
        return s

    @app.post("/sessions/{session_id}/moves")
    def submit_move(session_id: str, req: SubmitMove):
        s = get_session(session_id)
        with s.lock:
            if s.captured:
                raise HTTPException(409, "session already ended in capture")
            if req.round is not None and req.round != s.round:
                raise HTTPException(
                    409, f"stale round {req.round}; current round is {s.round}"
                )
            g = s.graph
            if s.human_side == "C":
                if not isinstance(req.move, list):
                    raise HTTPException(
                        422, "cop move must be a list with one node per cop"
                    )
                human_move = tuple(req.move)
                if list(human_move) not in _legal_cop_moves(g, s.position[0]):
                    raise HTTPException(422, "illegal cop move")
            else:
                if not isinstance(req.move, str):
                    raise HTTPException(422, "robber move must be a single node")
                human_move = req.move
                if human_move not in _legal_robber_moves(g, s.position[1]):
                    raise HTTPException(422, "illegal robber move")

            # The engine draw sees only the position, never req.move.
            engine_move = s.engine.sample(s.rng, s.position)

            if s.human_side == "C":
                cop_move, robber_move = human_move, engine_move
            else:
                cop_move, robber_move = engine_move, human_move
            before = s.position
            step = cccr_step(g, s.position, cop_move, robber_move)
            s.position = step.position
            s.round += 1
            if step.captured:
                s.captured = True
                s.en_passant = step.en_passant
                s.capture_round = s.round
            record = {
                "round": s.round,
                "position_before": _position_json(before),
                "human_move": list(human_move) if isinstance(human_move, tuple)
                else human_move,
                "engine_move": list(engine_move) if isinstance(engine_move, tuple)
                else engine_move,
                "position_after": _position_json(s.position),
                "captured": step.captured,
                "en_passant": step.en_passant,
            }
            s.history.append(record)
            value = 0.0 if s.captured else s.values.values[s.position]
            return {
                **record,
                "value_at_position": _num(value),
                "legal_moves": _legal_human_moves(s),
            }

    @app.get("/sessions/{session_id}")
    def session_state(session_id: str):
        s = get_session(session_id)
        with s.lock:
            g = s.graph
            cops, robber = s.position
            value = 0.0 if s.captured else s.values.values[s.position]
            value_row = {
                y: _num(s.values.values[(cops, y)]) for y in g.labels
            }
            engine_mix = []
            what_if = []
            if not s.captured:
                engine_mix = _mix_json(s.engine.distribution(s.position))
                engine_moves = [m for m, _ in s.engine.distribution(s.position)]
                for hm in _legal_human_moves(s):
                    outcomes = []
                    for em in engine_moves:
                        if s.human_side == "C":
                            cm, rm = tuple(hm), em
                        else:
                            cm, rm = em, hm
                        step = cccr_step(g, s.position, cm, rm)
                        outcomes.append({
                            "engine_move": list(em) if isinstance(em, tuple) else em,
                            "position": _position_json(step.position),
                            "captured": step.captured,
                            "en_passant": step.en_passant,
                            "value": _num(
                                0.0 if step.captured
                                else s.values.values[step.position]
                            ),
                        })
                    what_if.append({"human_move": hm, "outcomes": outcomes})
            return {
                "session_id": s.id,
                "graph": _graph_json(g, s.graph_name),
                "cops": s.cops,
                "human_side": s.human_side,
                "round": s.round,
                "position": _position_json(s.position),
                "captured": s.captured,
                "en_passant": s.en_passant,
                "capture_round": s.capture_round,
                "value_at_position": _num(value),
                "value_row": value_row,
                "legal_moves": _legal_human_moves(s),
                "engine_mix": engine_mix,
                "what_if": what_if,
                "history": list(s.history),
            }

    @app.get("/graphs/{spec}/solution")
    def graph_solution(spec: str, cops: int = 1, tol: float = 1e-2):
        try:
            g = generate(spec)
        except GraphError as exc:
            raise HTTPException(400, f"invalid graph spec: {exc}")
        if cops < 1:
            raise HTTPException(400, "cops must be at least 1")
        vt, mt = solve_cached(g, cops, tol)
        from . import exports

        return {
            "values": exports.value_table_json(vt),
            "strategies": exports.strategy_table_json(mt),
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
