"""Command-line frontend.

Subcommands: solve, cop-number, capture-time, simulate, gen, serve.
Exit codes: 1 malformed arguments, 2 unreadable or invalid graph,
3 solver non-convergence under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import exports
from .concurrent_game import capture_time as concurrent_capture_time
from .concurrent_game import value_iterate
from .graph import Graph, GraphError, edge_list_text, generate, parse_edge_list
from .simulation import (
    StrategyError,
    delayed_evasion_strategy,
    estimate_value,
    guessing_cop_strategy,
    mixed_table_strategy,
    stationary_strategy,
    uniform_random_strategy,
)
from .turn_based import cop_number, solve_copwin, tbcr_capture_time


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_graph_args(p: _Parser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--generator", metavar="SPEC",
                     help="named arena: path:N, cycle:N, clique:N, paper-tree, gavenciak")
    src.add_argument("--graph", metavar="FILE",
                     help="edge-list file, one 'u v' pair per line")


def _load_graph(args) -> Graph:
    try:
        if args.generator:
            return generate(args.generator)
        text = Path(args.graph).read_text(encoding="utf-8")
        return parse_edge_list(text)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _add_solver_args(p: _Parser) -> None:
    p.add_argument("--cops", type=int, default=1, metavar="K")
    p.add_argument("--tol", type=float, default=1e-2)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--ceiling", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)


def _solve(args, g: Graph):
    vt, mt = value_iterate(
        g,
        args.cops,
        tol=args.tol,
        max_iter=args.max_iter,
        ceiling=args.ceiling,
        workers=args.workers,
    )
    if getattr(args, "strict", False) and not vt.converged:
        print(
            f"error: value iteration did not converge within {args.max_iter} sweeps",
            file=sys.stderr,
        )
        raise SystemExit(3)
    return vt, mt


def _parse_start(text: str, cops: int):
    parts = text.split(",")
    if len(parts) != 2:
        return None
    cop_part, robber = parts[0].strip(), parts[1].strip()
    cop_nodes = tuple(c.strip() for c in cop_part.split("+"))
    if len(cop_nodes) != cops or not robber or any(not c for c in cop_nodes):
        return None
    return cop_nodes, robber


def _num(v: float):
    return "inf" if v == math.inf else v


def cmd_solve(args) -> int:
    g = _load_graph(args)
    vt, mt = _solve(args, g)
    fmt = args.format or ("csv" if args.cops == 1 else "json")
    if fmt == "csv" and args.cops != 1:
        print("error: csv output is defined for --cops 1 only", file=sys.stderr)
        return 1

    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []

        def emit(name: str, text: str):
            path = out / name
            path.write_text(text, encoding="utf-8")
            written.append(str(path))

        emit("values.json", json.dumps(exports.value_table_json(vt), indent=2) + "\n")
        emit("strategies.json", json.dumps(exports.strategy_table_json(mt), indent=2) + "\n")
        if args.cops == 1:
            emit("values.csv", exports.value_table_csv(vt))

        from . import report

        written.append(report.save_graph(g, str(out / "graph.png")))
        written.append(report.save_convergence(vt, str(out / "convergence.png")))
        if args.cops == 1:
            written.append(report.save_value_heatmap(vt, str(out / "heatmap.png")))
        for path in written:
            print(path)
        return 0

    if fmt == "csv":
        sys.stdout.write(exports.value_table_csv(vt))
    else:
        doc = {
            "values": exports.value_table_json(vt),
            "strategies": exports.strategy_table_json(mt),
        }
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def cmd_cop_number(args) -> int:
    g = _load_graph(args)
    k = cop_number(g, max_cops=args.max_cops)
    print(k if k is not None else f"> {args.max_cops}")
    return 0


def cmd_capture_time(args) -> int:
    g = _load_graph(args)
    vt, _ = _solve(args, g)
    result = {
        "concurrent": _num(concurrent_capture_time(vt)),
        "turn_based": _num(tbcr_capture_time(g, args.cops)),
    }
    print(json.dumps(result))
    return 0


def _make_strategy(name: str, side: str, g: Graph, solved, copwin):
    if name == "optimal":
        vt, mt = solved()
        return mixed_table_strategy(mt, side, fallback="uniform")
    if name == "uniform":
        return uniform_random_strategy(g, side)
    if name == "guessing" and side == "C":
        return guessing_cop_strategy(g, copwin())
    if name == "delayed-evasion" and side == "R":
        return delayed_evasion_strategy(g, copwin())
    if name == "stationary":
        return stationary_strategy(side)
    return None


def cmd_simulate(args) -> int:
    g = _load_graph(args)
    start = _parse_start(args.start, args.cops)
    if start is None:
        print(
            'error: --start must be "cop,robber" (joint cops joined by +)',
            file=sys.stderr,
        )
        return 1

    solved_cache = {}
    copwin_cache = {}

    def solved():
        if "x" not in solved_cache:
            solved_cache["x"] = _solve(args, g)
        return solved_cache["x"]

    def copwin():
        if "x" not in copwin_cache:
            copwin_cache["x"] = solve_copwin(g, args.cops)
        return copwin_cache["x"]

    cop_strategy = _make_strategy(args.cop_strategy, "C", g, solved, copwin)
    robber_strategy = _make_strategy(args.robber_strategy, "R", g, solved, copwin)
    if cop_strategy is None:
        print(f"error: unknown cop strategy {args.cop_strategy!r}", file=sys.stderr)
        return 1
    if robber_strategy is None:
        print(
            f"error: unknown robber strategy {args.robber_strategy!r}", file=sys.stderr
        )
        return 1

    try:
        est = estimate_value(
            g,
            cop_strategy,
            robber_strategy,
            start,
            episodes=args.episodes,
            horizon=args.horizon,
            seed=args.seed,
        )
    except (GraphError, StrategyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    doc = exports.estimate_json(est)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "estimate.json").write_text(
            json.dumps(doc, indent=2) + "\n", encoding="utf-8"
        )
        from . import report

        report.save_capture_histogram(est, str(out / "capture_rounds.png"))
        print(out / "estimate.json")
        print(out / "capture_rounds.png")
    print(json.dumps(doc))
    return 0


def cmd_gen(args) -> int:
    try:
        g = generate(args.spec)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(edge_list_text(g))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="copsrobbers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an arena and emit values + strategies")
    _add_graph_args(p)
    _add_solver_args(p)
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if iteration does not converge")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out-dir", default=None,
                   help="write tables and figures here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cop-number", help="fewest cops that win the turn-based game")
    _add_graph_args(p)
    p.add_argument("--max-cops", type=int, default=4)
    p.set_defaults(func=cmd_cop_number)

    p = sub.add_parser("capture-time",
                       help="worst-case expected rounds (concurrent) and "
                            "turn-based capture time")
    _add_graph_args(p)
    _add_solver_args(p)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_capture_time)

    p = sub.add_parser("simulate", help="Monte Carlo rollout of chosen strategies")
    _add_graph_args(p)
    _add_solver_args(p)
    p.add_argument("--cop-strategy", default="optimal",
                   help="optimal | uniform | guessing | stationary")
    p.add_argument("--robber-strategy", default="optimal",
                   help="optimal | uniform | delayed-evasion | stationary")
    p.add_argument("--start", required=True, metavar="COPS,ROBBER",
                   help='e.g. "2,1" or for two cops "2+3,1"')
    p.add_argument("--episodes", type=int, default=1000)
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen", help="print a generator's edge list")
    p.add_argument("spec", metavar="SPEC")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("COPSROBBERS_PORT", "8000")))
    p.add_argument("--static-dir", default=None,
                   help="also serve this directory of static assets at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        # Parameter-level misuse that survived parsing (e.g. --cops 0).
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
