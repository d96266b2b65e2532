"""Test pipeline orchestration, brute-force oracle, and independent
certificate verification."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import cone, gf2, milp, quadratic, reach
from .board import Board, Move, Position, parse_board, parse_position, render_grid
from .exact import NoIntegerSolution, hnf_solve
from .problem import Problem
from .verdict import (BUDGET, FAIL, PASS, Verdict, cell_key, parse_cell_key)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

ORACLE_CELL_CAP = 64
DEFAULT_ORACLE_BUDGET = 2_000_000

LADDER = ("f2", "lattice", "cone", "thickness", "nonneg",
          "quad_simple", "quad_flat")


@dataclass
class OracleResult:
    status: str  # feasible | infeasible | budget_exhausted
    play: list[Move] | None = None
    nodes: int = 0


def oracle_feasible(problem: Problem,
                    budget: int = DEFAULT_ORACLE_BUDGET) -> OracleResult:
    """Exhaustive depth-first search to the exact play length, memoized on
    position bitmasks (each move removes one peg, so the mask determines the
    remaining depth)."""
    board = problem.board
    if len(board) > ORACLE_CELL_CAP:
        raise ValueError(f"oracle capped at {ORACLE_CELL_CAP} cells")
    k = problem.n_moves
    if k < 0:
        return OracleResult(INFEASIBLE)
    start = board.mask(problem.start)
    target = board.mask(problem.end)
    move_masks = board.move_masks()
    dead: set[int] = set()
    nodes = 0

    def dfs(mask: int) -> bool | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return None
        if mask == target:
            return True
        if mask in dead or bin(mask).count("1") <= len(problem.end):
            return False
        for idx, (pq, r, _) in enumerate(move_masks):
            if mask & pq == pq and not mask & r:
                res = dfs((mask & ~pq) | r)
                if res is None:
                    return None
                if res:
                    path.append(idx)
                    return True
        dead.add(mask)
        return False

    path: list[int] = []
    res = dfs(start)
    if res is None:
        return OracleResult(BUDGET, nodes=nodes)
    if not res:
        return OracleResult(INFEASIBLE, nodes=nodes)
    play = [board.moves[i] for i in reversed(path)]
    return OracleResult(FEASIBLE, play=play, nodes=nodes)


@dataclass
class PipelineConfig:
    """Knobs echoed into every report."""

    full_ladder: bool = False       # keep running after the first FAIL
    node_budget: int = milp.DEFAULT_NODE_BUDGET
    # Quadratic MILPs grow as |S|^2 variables; boards beyond this cell count
    # skip both quadratic stages.
    quadratic_max_cells: int = 14
    side: quadratic.SideConstraints = field(
        default_factory=quadratic.SideConstraints)
    seed: int = 0

    def to_json(self) -> dict:
        side = self.side
        return {"full_ladder": self.full_ladder,
                "node_budget": self.node_budget,
                "quadratic_max_cells": self.quadratic_max_cells,
                "seed": self.seed,
                "side": {"window": side.window, "thickness": side.thickness,
                         "pairs": side.pairs, "horizon": side.horizon,
                         "derive": side.derive,
                         "certify_infinite": side.certify_infinite,
                         "refine_thickness": side.refine_thickness}}

    @staticmethod
    def from_json(data: dict) -> "PipelineConfig":
        side = data.get("side", {})
        return PipelineConfig(
            full_ladder=data.get("full_ladder", False),
            node_budget=data.get("node_budget", milp.DEFAULT_NODE_BUDGET),
            quadratic_max_cells=data.get("quadratic_max_cells", 14),
            seed=data.get("seed", 0),
            side=quadratic.SideConstraints(
                window=side.get("window", True),
                thickness=side.get("thickness", True),
                pairs=side.get("pairs", True),
                horizon=side.get("horizon", reach.DEFAULT_HORIZON),
                derive=side.get("derive", 1),
                certify_infinite=side.get("certify_infinite", True),
                refine_thickness=side.get("refine_thickness", False)))


@dataclass
class Report:
    """Every stage verdict in ladder order plus run metadata."""

    problem: Problem
    verdicts: dict[str, Verdict]
    config: PipelineConfig
    elapsed: float = 0.0

    @property
    def first_fail(self) -> str | None:
        for stage, v in self.verdicts.items():
            if v.failed:
                return stage
        return None

    @property
    def status(self) -> str:
        if any(v.failed for v in self.verdicts.values()):
            return FAIL
        if any(v.status == BUDGET for v in self.verdicts.values()):
            return BUDGET
        return PASS

    def to_json(self) -> dict:
        return {
            "board": render_grid(self.problem.board),
            "start": render_grid(self.problem.board, pegs=self.problem.start),
            "end": render_grid(self.problem.board, pegs=self.problem.end),
            "verdicts": {s: v.to_json() for s, v in self.verdicts.items()},
            "status": self.status,
            "first_fail": self.first_fail,
            "config": self.config.to_json(),
            "elapsed": self.elapsed,
        }

    @staticmethod
    def from_json(data: dict) -> "Report":
        board = parse_board(data["board"])
        problem = Problem(board, parse_position(board, data["start"]),
                          parse_position(board, data["end"]))
        verdicts = {s: Verdict.from_json(v)
                    for s, v in data["verdicts"].items()}
        return Report(problem, verdicts,
                      PipelineConfig.from_json(data.get("config", {})),
                      data.get("elapsed", 0.0))


def _precheck(problem: Problem) -> Verdict | None:
    # |I| < |J| is impossible outright; the constant pagoda witnesses it.
    if problem.n_moves < 0:
        pi = cone.ResourceCount(tuple(
            (c, mpq(1)) for c in problem.board.cells))
        return Verdict(FAIL, pi.to_certificate())
    return None


def _thickness_stage(problem: Problem, config: PipelineConfig) -> Verdict:
    board = problem.board
    bounds = [reach.thickness_bound(board, problem, m,
                                    refine=config.side.refine_thickness)
              for m in board.moves]
    return Verdict(PASS, {"type": "thickness_bounds", "bounds": bounds})


def run_pipeline(problem: Problem,
                 config: PipelineConfig | None = None,
                 cancel=None, progress=None) -> Report:
    """Run the test ladder cheapest-first, stopping at the first FAIL unless
    the config asks for the full ladder.

    cancel is polled between stages and at MILP node boundaries; progress,
    when given, is called as progress(stage, nodes) from MILP stages.
    """
    if config is None:
        config = PipelineConfig()
    board = problem.board
    t0 = time.monotonic()
    verdicts: dict[str, Verdict] = {}

    pre = _precheck(problem)
    if pre is not None:
        verdicts["precheck"] = pre
        return Report(problem, verdicts, config, time.monotonic() - t0)

    quad_ok = len(board) <= config.quadratic_max_cells

    def on_node(name: str):
        def cb(nodes: int) -> bool:
            if progress is not None:
                progress(name, nodes)
            return not (cancel is not None and cancel())
        return cb

    def stage(name: str) -> Verdict:
        if name == "f2":
            return gf2.f2_test(board, problem)
        if name == "lattice":
            return cone.lattice_test(board, problem)
        if name == "cone":
            return cone.rational_cone_test(board, problem)
        if name == "thickness":
            return _thickness_stage(problem, config)
        if name == "nonneg":
            return cone.nonneg_integer_test(board, problem,
                                            node_budget=config.node_budget,
                                            on_node=on_node(name))
        if name == "quad_simple":
            return quadratic.simple_quadratic_test(
                board, problem, node_budget=config.node_budget,
                on_node=on_node(name))
        if name == "quad_flat":
            return quadratic.flat_quadratic_test(
                board, problem, side=config.side,
                node_budget=config.node_budget, on_node=on_node(name))
        raise ValueError(f"unknown stage {name!r}")

    for name in LADDER:
        if cancel is not None and cancel():
            break
        if name.startswith("quad_") and not quad_ok:
            continue
        v = stage(name)
        verdicts[name] = v
        if v.failed and not config.full_ladder:
            break
    return Report(problem, verdicts, config, time.monotonic() - t0)


# ---------------------------------------------------------------------------
# Independent certificate verification

def _parse_values(board: Board, values: dict) -> dict | None:
    out = {}
    for key, v in values.items():
        cell = parse_cell_key(key)
        if cell not in board.cell_index:
            return None
        out[cell] = v
    if len(out) != len(board):
        return None
    return out


def _verify_witness(problem: Problem, cert: dict) -> bool:
    board = problem.board
    values = _parse_values(board, cert.get("values", {}))
    if values is None or any(v not in (0, 1) for v in values.values()):
        return False
    bits = 0
    for i, c in enumerate(board.cells):
        if values[c]:
            bits |= 1 << i
    w = gf2.Witness(bits)
    if not gf2.is_witness(board, w):
        return False
    return bin(bits & problem.delta_mask()).count("1") & 1 == 1


def _verify_pagoda_cert(problem: Problem, cert: dict) -> bool:
    board = problem.board
    values = _parse_values(board, cert.get("values", {}))
    if values is None:
        return False
    try:
        pi = cone.ResourceCount(tuple(
            (c, mpq(values[c])) for c in board.cells))
    except (ValueError, TypeError):
        return False
    if not cone.verify_pagoda(board, pi):
        return False
    return cone.pagoda_score(pi, problem.delta(), board) < 0


def _verify_combination(problem: Problem, cert: dict,
                        require_nonneg: bool) -> bool:
    board = problem.board
    coeffs = {}
    for key, v in cert.get("coeffs", {}).items():
        try:
            j = int(key)
            val = int(v)
        except (ValueError, TypeError):
            return False
        if not 0 <= j < len(board.moves):
            return False
        if require_nonneg and val < 0:
            return False
        coeffs[j] = val
    return cone.combination_vector(board, coeffs) == problem.delta()


def _verify_rational_combination(problem: Problem, cert: dict) -> bool:
    board = problem.board
    total = [mpq(0)] * len(board)
    idx = board.cell_index
    for key, v in cert.get("coeffs", {}).items():
        try:
            j = int(key)
            val = mpq(v)
        except (ValueError, TypeError):
            return False
        if not 0 <= j < len(board.moves) or val < 0:
            return False
        m = board.moves[j]
        total[idx[m.p]] += val
        total[idx[m.q]] += val
        total[idx[m.r]] -= val
    return total == [mpq(v) for v in problem.delta()]


def _verify_hnf_proof(problem: Problem, cert: dict) -> bool:
    if cert.get("h") != problem.delta():
        return False
    board = problem.board
    H, U = cone._board_hnf(board)
    try:
        hnf_solve(H, U, problem.delta())
    except NoIntegerSolution:
        return True
    return False


def _verify_bnb(problem: Problem, cert: dict, stage: str) -> bool:
    board = problem.board
    if stage == "nonneg":
        upper = None
        bounds = cert.get("bounds")
        if bounds:
            upper = [mpq(bounds[str(j)]) if str(j) in bounds else None
                     for j in range(len(board.moves))]
        sys = cone.cone_system(board, problem.delta(), upper)
        objective = [1] * len(board.moves)
    elif stage == "quad_simple":
        sys = quadratic.simple_system(board, problem)
        objective = [1] * sys.n_cols
    elif stage == "quad_flat":
        sys = quadratic.flat_system(board, problem, cert.get("side"))
        objective = quadratic.flat_objective(board)
    else:
        return False
    return milp.replay_transcript(sys, objective, cert)


def _verify_quadratic_combination(problem: Problem, cert: dict) -> bool:
    board = problem.board
    gens = quadratic.quadratic_generators(board)
    cross = quadratic.cross_index(board)
    total = [0] * len(cross)
    for key, v in cert.get("coeffs", {}).items():
        try:
            j = int(key)
            val = int(v)
        except (ValueError, TypeError):
            return False
        if not 0 <= j < len(gens) or val < 0:
            return False
        for a, b, coeff in gens[j].entries():
            total[cross.of(a, b)] += coeff * val
    return total == quadratic._quadratic_target(board, problem)


def _verify_flat_combination(problem: Problem, cert: dict) -> bool:
    board = problem.board
    x: dict[int, int] = {}
    y: dict[tuple[int, tuple[int, int]], int] = {}
    try:
        for key, v in cert.get("x", {}).items():
            x[int(key)] = int(v)
        for key, v in cert.get("y", {}).items():
            j, cell = key.split(":")
            y[(int(j), parse_cell_key(cell))] = int(v)
    except (ValueError, TypeError):
        return False
    if any(not 0 <= j < len(board.moves) for j in x):
        return False
    if any(not 0 <= j < len(board.moves) or cell not in board.cell_index
           for j, cell in y):
        return False
    if any(v < 0 for v in x.values()) or any(v < 0 for v in y.values()):
        return False
    if any(v > x.get(j, 0) for (j, _), v in y.items()):
        return False
    if quadratic.witness_vector(board, x, y) != \
            quadratic._quadratic_target(board, problem):
        return False
    # Side rows, if any, must hold for the witness too.
    sys = quadratic.flat_system(board, problem, cert.get("side"))
    y_keys = quadratic.flat_layout(board)
    point = [x.get(j, 0) for j in range(len(board.moves))]
    point += [y.get(key, 0) for key in y_keys]
    from .exact import check_point
    return check_point(sys, point)


def _verify_thickness(problem: Problem, cert: dict) -> bool:
    board = problem.board
    bounds = cert.get("bounds")
    if not isinstance(bounds, list) or len(bounds) != len(board.moves):
        return False
    # Refined bounds may be anywhere below the pagoda bound; above it the
    # certificate overstates what the pagoda proves.
    for m, stated in zip(board.moves, bounds):
        base = reach.thickness_bound(board, problem, m)
        if not isinstance(stated, int) or stated > base or stated < 0:
            return False
    return True


def verify_certificate(report: Report) -> bool:
    """Re-check every certificate in the report by direct substitution or
    transcript replay; no solver output is trusted."""
    problem = report.problem
    for stage, verdict in report.verdicts.items():
        cert = verdict.certificate
        if cert is None:
            if verdict.failed:
                return False
            continue
        kind = cert.get("type")
        try:
            ok = _verify_one(problem, verdict, cert, kind, stage)
        except (KeyError, ValueError, TypeError, IndexError):
            ok = False
        if not ok:
            return False
    return True


def _verify_one(problem: Problem, verdict: Verdict, cert: dict,
                kind: str, stage: str) -> bool:
    if kind == "witness":
        return verdict.failed and _verify_witness(problem, cert)
    if kind == "pagoda":
        return verdict.failed and _verify_pagoda_cert(problem, cert)
    if kind == "integer_combination":
        return verdict.passed and _verify_combination(
            problem, cert, require_nonneg=not cert.get("signed"))
    if kind == "rational_combination":
        return verdict.passed and _verify_rational_combination(problem, cert)
    if kind == "hnf_proof":
        return verdict.failed and _verify_hnf_proof(problem, cert)
    if kind == "bnb_transcript":
        return verdict.failed and _verify_bnb(problem, cert, stage)
    if kind == "quadratic_combination":
        return verdict.passed and _verify_quadratic_combination(problem, cert)
    if kind == "flat_quadratic_combination":
        return verdict.passed and _verify_flat_combination(problem, cert)
    if kind == "thickness_bounds":
        return _verify_thickness(problem, cert)
    return False
