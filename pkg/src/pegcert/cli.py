"""Command-line interface: certification runs, diagrams, the brute-force
solver, separator searches, and the HTTP server."""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time

from gmpy2 import mpq

from . import engine, gf2, reach
from .board import (Board, BoardError, IllegalMoveError, parse_board,
                    render_grid, standard_board)
from .cone import ResourceCount, conjecture_probes, verify_pagoda
from .problem import Problem, parse_problem, problem_to_text
from .verdict import BUDGET, FAIL, PASS, parse_cell_key

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

STAGE_ALIASES = {
    "f2": "f2",
    "parity": "f2",
    "lattice": "lattice",
    "cone": "cone",
    "rational": "cone",
    "thickness": "thickness",
    "ilp": "nonneg",
    "nonneg": "nonneg",
    "quadsimple": "quad_simple",
    "quad_simple": "quad_simple",
    "quadflat": "quad_flat",
    "quad_flat": "quad_flat",
}

STANDARD_NAMES = ("english", "french", "wiegleb")


class _Parser(argparse.ArgumentParser):
    # Usage errors must exit above the budget code.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_board(arg: str) -> Board:
    if arg in STANDARD_NAMES:
        return standard_board(arg)
    with open(arg) as fh:
        return parse_board(fh.read())


def _load_problem(arg: str) -> Problem:
    with open(arg) as fh:
        return parse_problem(fh.read())


def _stage(name: str) -> str:
    key = name.lower().replace("-", "_")
    if key not in STAGE_ALIASES:
        raise SystemExit(EXIT_USAGE)
    return STAGE_ALIASES[key]


def _default_config() -> engine.PipelineConfig:
    path = os.environ.get("PEGCERT_CONFIG")
    if path:
        with open(path) as fh:
            return engine.PipelineConfig.from_json(json.load(fh))
    return engine.PipelineConfig()


def _report_exit(report: engine.Report) -> int:
    if report.status == PASS:
        return EXIT_PASS
    if report.status == FAIL:
        return EXIT_FAIL
    return EXIT_BUDGET


def _cmd_check(args) -> int:
    problem = _load_problem(args.problem)
    config = _default_config()
    config.seed = args.seed
    if args.full_ladder:
        config.full_ladder = True
    report = engine.run_pipeline(problem, config)
    if args.tests:
        wanted = {_stage(t) for part in args.tests for t in part.split(",")}
        report.verdicts = {s: v for s, v in report.verdicts.items()
                           if s in wanted}
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for stage, v in report.verdicts.items():
            print(f"{stage:12s} {v.status}")
        print(f"overall      {report.status}")
    return _report_exit(report)


def _cmd_witness(args) -> int:
    board = _load_board(args.board)
    basis = gf2.witness_basis(board)
    for i, w in enumerate(basis):
        values = {c: str((w.bits >> k) & 1)
                  for k, c in enumerate(board.cells)}
        print(f"witness {i}:")
        print(render_grid(board, values=values))
        print()
    print(f"{len(basis)} basis witnesses")
    return EXIT_PASS


def _cmd_pagoda_verify(args) -> int:
    board = _load_board(args.board)
    with open(args.pagoda) as fh:
        data = json.load(fh)
    try:
        values = {parse_cell_key(k): mpq(v)
                  for k, v in data["values"].items()}
        pi = ResourceCount(tuple((c, values[c]) for c in board.cells))
    except (KeyError, ValueError):
        print("malformed pagoda file", file=sys.stderr)
        return EXIT_USAGE
    ok = verify_pagoda(board, pi)
    print("valid pagoda" if ok else "not a pagoda")
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_diagram(args, mode: str) -> int:
    problem = _load_problem(args.problem)
    board = problem.board
    frontier = reach.bounded_search(board, problem.start, args.k, mode)
    values = {}
    for a in board.cells:
        if mode == "depth":
            v = reach.depth_lower_bound(board, a, problem.start, frontier)
        else:
            v = reach.height_lower_bound(board, a, problem.start, frontier)
        values[a] = v
    print(reach.render_diagram(board, values))
    return EXIT_PASS


def _cmd_thickness(args) -> int:
    problem = _load_problem(args.problem)
    board = problem.board
    bounds = [reach.thickness_bound(board, problem, m, refine=args.refine)
              for m in board.moves]
    for m, bound in zip(board.moves, bounds):
        print(f"{m.p}->{m.r}: {bound}")
    print(f"max {max(bounds)}")
    return EXIT_PASS


def _cmd_solve(args) -> int:
    problem = _load_problem(args.problem)
    result = engine.oracle_feasible(problem, budget=args.budget)
    if result.status == engine.FEASIBLE:
        for m in result.play:
            print(f"{m.p} over {m.q} to {m.r}")
        print(f"feasible in {len(result.play)} moves ({result.nodes} nodes)")
        return EXIT_PASS
    if result.status == engine.INFEASIBLE:
        print(f"infeasible ({result.nodes} nodes)")
        return EXIT_FAIL
    print(f"budget exhausted ({result.nodes} nodes)")
    return EXIT_BUDGET


def random_problem(board: Board, rng: random.Random,
                   max_end: int | None = None) -> Problem:
    """Random problem: every cell pegged independently, then a smaller random
    subset as the target."""
    cells = list(board.cells)
    start = [c for c in cells if rng.random() < rng.uniform(0.3, 0.9)]
    if not start:
        start = [rng.choice(cells)]
    hi = len(start) if max_end is None else min(max_end, len(start))
    n_end = rng.randint(0, hi)
    end = rng.sample(cells, n_end)
    return Problem(board, board.position(start), board.position(end))


def search_separators(board: Board, from_stage: str, to_stage: str,
                      seed: int, attempts: int = 100_000,
                      time_budget: float | None = None,
                      node_budget: int = 50_000,
                      max_end: int | None = None):
    """Seeded random search for a problem passing every ladder stage up to
    from_stage but failing to_stage; returns (problem, report) or None."""
    order = list(engine.LADDER)
    upto = order.index(from_stage)
    rng = random.Random(seed)
    config = engine.PipelineConfig(full_ladder=True, node_budget=node_budget)
    t0 = time.monotonic()
    for _ in range(attempts):
        if time_budget is not None and time.monotonic() - t0 > time_budget:
            return None
        problem = random_problem(board, rng, max_end)
        report = engine.run_pipeline(problem, config)
        verdicts = report.verdicts
        if to_stage not in verdicts or not verdicts[to_stage].failed:
            continue
        if all(verdicts[s].passed for s in order[:upto + 1]
               if s in verdicts):
            return problem, report
    return None


def _cmd_search_separators(args) -> int:
    board = _load_board(args.board)
    from_stage = _stage(getattr(args, "from"))
    to_stage = _stage(args.to)
    found = search_separators(board, from_stage, to_stage, args.seed,
                              attempts=args.attempts,
                              time_budget=args.time_budget,
                              node_budget=args.node_budget)
    if found is None:
        print("budget exhausted, no separator found", file=sys.stderr)
        return EXIT_BUDGET
    problem, report = found
    text = problem_to_text(problem)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        with open(args.out + ".report.json", "w") as fh:
            json.dump(report.to_json(), fh, indent=2)
        print(f"wrote {args.out}")
    else:
        print(text)
        print(json.dumps({s: v.status for s, v in report.verdicts.items()}))
    return EXIT_PASS


def _cmd_probe_conjectures(args) -> int:
    board = _load_board(args.board)
    report = conjecture_probes(board, samples=args.samples, seed=args.seed)
    print(json.dumps(report, indent=2))
    violations = (report["double_in_integer_cone"]["violations"]
                  + report["double_point_in_basis_span"]["violations"])
    return EXIT_PASS if violations == 0 else EXIT_FAIL


def _cmd_serve(args) -> int:
    import uvicorn

    from .http_api import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port,
                log_level="warning")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pegcert",
                     description="Certified infeasibility tests for "
                                 "peg-solitaire problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the test ladder on a problem file")
    p.add_argument("problem")
    p.add_argument("--tests", action="append",
                   help="comma-separated stage subset to report")
    p.add_argument("--json", action="store_true")
    p.add_argument("--full-ladder", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("witness", help="print a witness basis as grids")
    p.add_argument("board")

    p = sub.add_parser("pagoda-verify", help="check a pagoda value file")
    p.add_argument("board")
    p.add_argument("pagoda")

    for mode in ("depth", "height"):
        p = sub.add_parser(mode, help=f"{mode} lower-bound diagram")
        p.add_argument("problem")
        p.add_argument("--k", type=int, default=reach.DEFAULT_HORIZON)

    p = sub.add_parser("thickness", help="per-move thickness bounds")
    p.add_argument("problem")
    p.add_argument("--refine", action="store_true")

    p = sub.add_parser("solve", help="exhaustive search for a play")
    p.add_argument("problem")
    p.add_argument("--budget", type=int, default=engine.DEFAULT_ORACLE_BUDGET)

    p = sub.add_parser("search-separators",
                       help="find a problem separating two ladder stages")
    p.add_argument("board")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=100_000)
    p.add_argument("--time-budget", type=float, default=None)
    p.add_argument("--node-budget", type=int, default=50_000)
    p.add_argument("--out")

    p = sub.add_parser("probe-conjectures",
                       help="sample the open inclusion conjectures")
    p.add_argument("board")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "witness":
            return _cmd_witness(args)
        if args.command == "pagoda-verify":
            return _cmd_pagoda_verify(args)
        if args.command in ("depth", "height"):
            return _cmd_diagram(args, args.command)
        if args.command == "thickness":
            return _cmd_thickness(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "search-separators":
            return _cmd_search_separators(args)
        if args.command == "probe-conjectures":
            return _cmd_probe_conjectures(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except (BoardError, IllegalMoveError, OSError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
