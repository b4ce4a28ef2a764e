"""JSON/CSV serialization for tables and traces.

Infinite values are written as the string ``"inf"`` in both formats; floats
round-trip exactly (JSON carries Python's repr). Every exporter here has a
parser that inverts it.
"""

from __future__ import annotations

import json
import math

from .concurrent_game import MixedStrategyTable, ValueTable
from .simulation import EpisodeTrace, ValueEstimate
from .turn_based import CopwinTable


def _num(v: float):
    return "inf" if v == math.inf else v


def _unnum(v) -> float:
    if v == "inf":
        return math.inf
    return float(v)


# -- value tables ---------------------------------------------------------

def value_table_json(vt: ValueTable) -> dict:
    return {
        "format": "value-table",
        "cop_count": vt.cop_count,
        "nodes": list(vt.graph.labels),
        "tol": vt.tol,
        "ceiling": vt.ceiling,
        "iterations_used": vt.iterations_used,
        "converged": vt.converged,
        "values": [
            {"cops": list(cops), "robber": robber, "value": _num(v)}
            for (cops, robber), v in vt.values.items()
        ],
    }


def parse_value_table_json(obj) -> dict:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("format") != "value-table":
        raise ValueError("not a value-table document")
    values = {
        (tuple(rec["cops"]), rec["robber"]): _unnum(rec["value"])
        for rec in obj["values"]
    }
    return {
        "cop_count": obj["cop_count"],
        "nodes": list(obj["nodes"]),
        "values": values,
        "iterations_used": obj["iterations_used"],
        "converged": obj["converged"],
    }


def value_table_csv(vt: ValueTable) -> str:
    """K=1 only: a matrix with one row per cop node, one column per robber
    node, in node order."""
    if vt.cop_count != 1:
        raise ValueError("CSV export is defined for the single-cop game only")
    labels = vt.graph.labels
    lines = ["cop\\robber," + ",".join(labels)]
    for x in labels:
        cells = []
        for y in labels:
            v = vt.values[((x,), y)]
            cells.append("inf" if v == math.inf else repr(v))
        lines.append(x + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def parse_value_table_csv(text: str) -> dict:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("cop\\robber,"):
        raise ValueError("not a value-table CSV")
    robbers = lines[0].split(",")[1:]
    values = {}
    for ln in lines[1:]:
        cells = ln.split(",")
        cop = cells[0]
        for y, cell in zip(robbers, cells[1:]):
            values[((cop,), y)] = math.inf if cell == "inf" else float(cell)
    return {"cop_count": 1, "nodes": robbers, "values": values}


# -- strategy tables ------------------------------------------------------

def strategy_table_json(mt: MixedStrategyTable) -> dict:
    return {
        "format": "strategy-table",
        "cop_count": mt.cop_count,
        "nodes": list(mt.graph.labels),
        "cop": [
            {
                "cops": list(cops),
                "robber": robber,
                "support": [
                    {"move": list(move), "prob": prob} for move, prob in dist
                ],
            }
            for (cops, robber), dist in mt.cop.items()
        ],
        "robber": [
            {
                "cops": list(cops),
                "robber": robber,
                "support": [{"move": move, "prob": prob} for move, prob in dist],
            }
            for (cops, robber), dist in mt.robber.items()
        ],
    }


def parse_strategy_table_json(obj) -> dict:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("format") != "strategy-table":
        raise ValueError("not a strategy-table document")
    cop = {
        (tuple(rec["cops"]), rec["robber"]): tuple(
            (tuple(s["move"]), s["prob"]) for s in rec["support"]
        )
        for rec in obj["cop"]
    }
    robber = {
        (tuple(rec["cops"]), rec["robber"]): tuple(
            (s["move"], s["prob"]) for s in rec["support"]
        )
        for rec in obj["robber"]
    }
    return {"cop_count": obj["cop_count"], "cop": cop, "robber": robber}


# -- rank tables ----------------------------------------------------------

def copwin_table_json(ct: CopwinTable) -> dict:
    return {
        "format": "copwin-table",
        "cop_count": ct.cop_count,
        "nodes": list(ct.graph.labels),
        "ranks": [
            {
                "cops": list(cops),
                "robber": robber,
                "turn": turn,
                "rank": "inf" if r == math.inf else int(r),
            }
            for (cops, robber, turn), r in ct.rank.items()
        ],
    }


def parse_copwin_table_json(obj) -> dict:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if obj.get("format") != "copwin-table":
        raise ValueError("not a copwin-table document")
    ranks = {
        (tuple(rec["cops"]), rec["robber"], rec["turn"]): (
            math.inf if rec["rank"] == "inf" else float(rec["rank"])
        )
        for rec in obj["ranks"]
    }
    return {"cop_count": obj["cop_count"], "ranks": ranks}


# -- episodes -------------------------------------------------------------

def trace_json(trace: EpisodeTrace) -> dict:
    return {
        "positions": [[list(cops), robber] for cops, robber in trace.positions],
        "capture_round": trace.capture_round,
        "en_passant": trace.en_passant,
        "truncated": trace.truncated,
        "seed": trace.seed,
    }


def traces_jsonl(traces) -> str:
    return "\n".join(json.dumps(trace_json(t)) for t in traces) + "\n"


def estimate_json(est: ValueEstimate) -> dict:
    return {
        "mean": est.mean,
        "stderr": est.stderr,
        "episodes": est.episodes,
        "captured": est.captured,
        "truncated_fraction": est.truncated_fraction,
        "horizon": est.horizon,
    }
