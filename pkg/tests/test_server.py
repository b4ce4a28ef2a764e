"""HTTP play service: endpoint contracts, error codes, and the
independence audit for the engine's simultaneous draw."""
import asyncio
import math
from concurrent.futures import ThreadPoolExecutor

import httpx
import numpy as np
import pytest
from fastapi.testclient import TestClient

from copsrobbers import exports, value_iterate, generate
from copsrobbers.server import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


K3_START = {"graph": "clique:3", "human_side": "R",
            "start": {"cops": ["3"], "robber": "1"}, "seed": 0}


def test_create_session_shape(client):
    r = client.post("/sessions", json=K3_START)
    assert r.status_code == 200
    doc = r.json()
    assert doc["round"] == 0 and doc["captured"] is False
    assert doc["human_side"] == "R" and doc["cops"] == 1
    assert doc["position"] == {"cops": ["3"], "robber": "1"}
    assert doc["graph"]["nodes"] == ["1", "2", "3"]
    assert len(doc["graph"]["edges"]) == 3
    assert abs(doc["value_at_position"] - 2.0) < 1e-2
    assert sorted(doc["legal_moves"]) == ["1", "2", "3"]


def test_create_session_from_edges(client):
    r = client.post("/sessions", json={
        "edges": [["a", "b"], ["b", "c"]], "human_side": "C",
        "start": {"cops": ["b"], "robber": "a"}, "seed": 1})
    assert r.status_code == 200
    doc = r.json()
    assert doc["graph"]["name"] is None
    assert doc["graph"]["nodes"] == ["a", "b", "c"]
    assert ["a"] in doc["legal_moves"] and ["c"] in doc["legal_moves"]


def test_random_start_is_seed_deterministic(client):
    starts = []
    for _ in range(2):
        r = client.post("/sessions", json={"graph": "gavenciak",
                                           "start": "random", "seed": 5})
        starts.append(r.json()["position"])
    assert starts[0] == starts[1]


def test_create_session_validation_400(client):
    bad = [
        {"graph": "clique:3", "human_side": "X"},
        {"graph": "clique:3", "cops": 0},
        {"graph": "mystery:9"},
        {},
        {"graph": "clique:3", "start": {"cops": ["1", "2"], "robber": "3"}},
        {"graph": "clique:3", "start": {"cops": ["9"], "robber": "1"}},
        {"graph": "clique:3", "start": {"cops": ["1"], "robber": "1"}},
        {"graph": "clique:3", "start": {"robber": "1"}},
    ]
    for body in bad:
        assert client.post("/sessions", json=body).status_code == 400, body
    # Type-invalid bodies are refused at the schema boundary.
    assert client.post("/sessions",
                       json={"graph": "clique:3", "start": 7}).status_code == 422


def test_cop_shortage_409_and_force(client):
    body = {"graph": "cycle:4", "start": "random", "seed": 2}
    assert client.post("/sessions", json=body).status_code == 409
    r = client.post("/sessions", json={**body, "force": True})
    assert r.status_code == 200
    assert r.json()["value_at_position"] == "inf"
    r = client.post("/sessions", json={**body, "cops": 2})
    assert r.status_code == 200


def test_unknown_session_404(client):
    assert client.get("/sessions/feedbeef").status_code == 404
    assert client.post("/sessions/feedbeef/moves",
                       json={"move": "1"}).status_code == 404


def test_move_flow_and_round_bookkeeping(client):
    sid = client.post("/sessions", json=K3_START).json()["session_id"]
    r = client.post(f"/sessions/{sid}/moves", json={"move": "1", "round": 0})
    assert r.status_code == 200
    doc = r.json()
    assert doc["round"] == 1
    assert doc["human_move"] == "1"
    assert doc["engine_move"][0] in ("1", "2")
    assert doc["position_before"] == {"cops": ["3"], "robber": "1"}
    # Stale round: resubmitting round 0 is refused.
    r = client.post(f"/sessions/{sid}/moves", json={"move": "1", "round": 0})
    assert r.status_code == 409


def test_illegal_and_misshapen_moves_422(client):
    sid = client.post("/sessions", json={
        "graph": "path:5", "human_side": "R",
        "start": {"cops": ["1"], "robber": "5"}, "seed": 0}).json()["session_id"]
    assert client.post(f"/sessions/{sid}/moves",
                       json={"move": "2"}).status_code == 422  # not adjacent
    assert client.post(f"/sessions/{sid}/moves",
                       json={"move": ["5"]}).status_code == 422  # robber sends list
    assert client.post(f"/sessions/{sid}/moves", json={}).status_code == 422

    cop_sid = client.post("/sessions", json={
        "graph": "path:5", "human_side": "C",
        "start": {"cops": ["1"], "robber": "5"}, "seed": 0}).json()["session_id"]
    assert client.post(f"/sessions/{cop_sid}/moves",
                       json={"move": "2"}).status_code == 422  # cop sends bare node
    assert client.post(f"/sessions/{cop_sid}/moves",
                       json={"move": ["4"]}).status_code == 422  # not adjacent


def test_session_ends_on_capture_then_409(client):
    # K3 with the human standing still: the engine pounces within a few rounds.
    sid = client.post("/sessions", json={**K3_START, "seed": 11}).json()["session_id"]
    captured = False
    for _ in range(30):
        r = client.post(f"/sessions/{sid}/moves", json={"move": "1"})
        assert r.status_code == 200
        if r.json()["captured"]:
            captured = True
            break
    assert captured
    assert client.post(f"/sessions/{sid}/moves",
                       json={"move": "1"}).status_code == 409
    state = client.get(f"/sessions/{sid}").json()
    assert state["captured"] is True
    assert state["capture_round"] == state["round"]
    assert state["value_at_position"] == 0.0
    assert state["legal_moves"] == []


def test_en_passant_swap_on_path2(client):
    # At (cops=(1), robber=2) the engine cop's mix is a point mass on node 2,
    # so a robber reply of 1 forces the edge swap.
    sid = client.post("/sessions", json={
        "graph": "path:2", "human_side": "R",
        "start": {"cops": ["1"], "robber": "2"}, "seed": 0}).json()["session_id"]
    state = client.get(f"/sessions/{sid}").json()
    assert state["engine_mix"] == [{"move": ["2"], "prob": 1.0}]
    swap = [o for w in state["what_if"] if w["human_move"] == "1"
            for o in w["outcomes"]]
    assert swap == [{"engine_move": ["2"], "position": {"cops": ["2"], "robber": "2"},
                     "captured": True, "en_passant": True, "value": 0.0}]

    r = client.post(f"/sessions/{sid}/moves", json={"move": "1", "round": 0})
    doc = r.json()
    assert doc["captured"] is True and doc["en_passant"] is True
    assert doc["position_after"] == {"cops": ["2"], "robber": "2"}


def test_state_read_is_idempotent_and_annotated(client):
    sid = client.post("/sessions", json=K3_START).json()["session_id"]
    a = client.get(f"/sessions/{sid}").json()
    b = client.get(f"/sessions/{sid}").json()
    assert a == b
    assert a["value_row"] == {"1": a["value_at_position"], "2": 2.0, "3": 0.0} \
        or set(a["value_row"]) == {"1", "2", "3"}
    assert abs(sum(e["prob"] for e in a["engine_mix"]) - 1.0) < 1e-9
    assert {w["human_move"] for w in a["what_if"]} == {"1", "2", "3"}
    # Every what-if outcome must agree with the value table.
    vt, _ = value_iterate(generate("clique:3"), 1)
    for w in a["what_if"]:
        for o in w["outcomes"]:
            expected = 0.0 if o["captured"] else vt.values[
                (tuple(o["position"]["cops"]), o["position"]["robber"])]
            assert o["value"] == pytest.approx(expected)


def test_value_row_tracks_current_cop_tuple(client):
    sid = client.post("/sessions", json={
        "graph": "path:3", "human_side": "R",
        "start": {"cops": ["1"], "robber": "3"}, "seed": 4}).json()["session_id"]
    row = client.get(f"/sessions/{sid}").json()["value_row"]
    assert row["1"] == 0.0
    assert row["3"] == pytest.approx(2.0, abs=1e-2)


def test_human_can_play_cop_side(client):
    sid = client.post("/sessions", json={
        "graph": "paper-tree", "human_side": "C",
        "start": {"cops": ["3"], "robber": "2"}, "seed": 9}).json()["session_id"]
    r = client.post(f"/sessions/{sid}/moves", json={"move": ["1"], "round": 0})
    assert r.status_code == 200
    doc = r.json()
    assert doc["human_move"] == ["1"]
    assert isinstance(doc["engine_move"], str)


def test_concurrent_submissions_single_writer(client):
    sid = client.post("/sessions", json={**K3_START, "seed": 21}).json()["session_id"]

    def submit(_):
        return client.post(f"/sessions/{sid}/moves",
                           json={"move": "1", "round": 0}).status_code

    with ThreadPoolExecutor(2) as pool:
        codes = sorted(pool.map(submit, range(2)))
    assert codes == [200, 409]


def test_solution_export_round_trips(client, solved):
    r = client.get("/graphs/gavenciak/solution")
    assert r.status_code == 200
    doc = r.json()
    values = exports.parse_value_table_json(doc["values"])
    vt, mt = solved["gavenciak"]
    assert values["values"] == vt.values
    strategies = exports.parse_strategy_table_json(doc["strategies"])
    assert strategies["cop"] == mt.cop and strategies["robber"] == mt.robber


def test_solution_export_validation(client):
    assert client.get("/graphs/mystery:9/solution").status_code == 400
    assert client.get("/graphs/clique:3/solution?cops=0").status_code == 400
    r = client.get("/graphs/cycle:4/solution?cops=2")
    assert r.status_code == 200


def test_static_dir_serves_index(tmp_path):
    (tmp_path / "index.html").write_text("<h1>arena</h1>")
    with TestClient(create_app(static_dir=str(tmp_path))) as c:
        r = c.get("/")
        assert r.status_code == 200
        assert "arena" in r.text
        assert c.post("/sessions", json=K3_START).status_code == 200


def test_engine_draw_independent_of_submitted_move():
    """Simultaneity audit: across 10^4 scripted sessions the engine's move
    distribution does not depend on which move the human submitted."""
    from scipy.stats import chi2_contingency

    app = create_app()
    human_moves = ("1", "2", "3")
    counts = {hm: {"1": 0, "2": 0} for hm in human_moves}

    async def run():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://test") as c:

            async def one(i):
                r = await c.post("/sessions", json={
                    "graph": "clique:3", "human_side": "R",
                    "start": {"cops": ["3"], "robber": "1"}, "seed": i})
                sid = r.json()["session_id"]
                hm = human_moves[i % 3]
                r = await c.post(f"/sessions/{sid}/moves",
                                 json={"move": hm, "round": 0})
                return hm, r.json()["engine_move"][0]

            batch = 250
            for lo in range(0, 10_000, batch):
                done = await asyncio.gather(*(one(i) for i in
                                              range(lo, lo + batch)))
                for hm, em in done:
                    counts[hm][em] += 1

    asyncio.run(run())
    table = np.array([[counts[hm]["1"], counts[hm]["2"]]
                      for hm in human_moves])
    assert table.sum() == 10_000
    assert table.min() > 0
    stat, p, dof, _ = chi2_contingency(table)
    assert dof == 2
    # 1% significance: chi2 critical value for df=2 is 9.21.
    assert stat < 9.21, f"chi2={stat:.3f}, p={p:.4f}\n{table}"
