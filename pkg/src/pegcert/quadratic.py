"""Quadratic infeasibility tests over symmetric cell pairs, with and without
flatness and geometric side constraints."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .board import Board, Cell, Move, Position, apply_move
from .problem import Problem
from . import milp, reach
from .exact import LinearSystem
from .verdict import BUDGET, FAIL, PASS, Verdict, cell_key, parse_cell_key


class CrossIndex:
    """Ordered unordered cell pairs {A, B}, A = B included; lookup both ways."""

    def __init__(self, board: Board):
        self.board = board
        cells = board.cells
        pairs = []
        index: dict[tuple[Cell, Cell], int] = {}
        for i in range(len(cells)):
            for j in range(i, len(cells)):
                index[(cells[i], cells[j])] = len(pairs)
                index[(cells[j], cells[i])] = len(pairs)
                pairs.append((cells[i], cells[j]))
        self.pairs: tuple[tuple[Cell, Cell], ...] = tuple(pairs)
        self.index = index

    def __len__(self) -> int:
        return len(self.pairs)

    def of(self, a: Cell, b: Cell) -> int:
        return self.index[(a, b)]


@lru_cache(maxsize=64)
def cross_index(board: Board) -> CrossIndex:
    return CrossIndex(board)


@dataclass(frozen=True)
class QuadraticGenerator:
    """Either the diagonal image of a move, or a flat bystander generator."""

    kind: str  # "diagonal" or "flat"
    move: Move
    cell: Cell | None = None

    def entries(self) -> list[tuple[Cell, Cell, int]]:
        p, q, r = self.move.p, self.move.q, self.move.r
        if self.kind == "diagonal":
            # |g| x g = e_PP + 2 e_PQ + e_QQ - e_RR for g = e_P + e_Q - e_R.
            return [(p, p, 1), (p, q, 2), (q, q, 1), (r, r, -1)]
        a = self.cell
        return [(a, p, 2), (a, q, 2), (a, r, -2)]

    def vector(self, cross: CrossIndex) -> list[int]:
        out = [0] * len(cross)
        for a, b, v in self.entries():
            out[cross.of(a, b)] += v
        return out


def quadratic_generators(board: Board) -> list[QuadraticGenerator]:
    """One diagonal generator per move plus one flat generator per move and
    off-support cell: (|S| - 2) * |D(S)| generators in all."""
    out = [QuadraticGenerator("diagonal", m) for m in board.moves]
    for m in board.moves:
        support = set(m.support())
        for cell in board.cells:
            if cell not in support:
                out.append(QuadraticGenerator("flat", m, cell))
    return out


def quadratic_image(board: Board, pos: Position) -> list[int]:
    """1_K x 1_K over the cross index: 1 on {A,A} for pegged A, 2 on {A,B}
    for distinct pegged A, B."""
    cross = cross_index(board)
    out = [0] * len(cross)
    pegs = sorted(pos.pegs)
    for i, a in enumerate(pegs):
        out[cross.of(a, a)] = 1
        for b in pegs[i + 1:]:
            out[cross.of(a, b)] = 2
    return out


def _quadratic_target(board: Board, problem: Problem) -> list[int]:
    start = quadratic_image(board, problem.start)
    end = quadratic_image(board, problem.end)
    return [s - e for s, e in zip(start, end)]


def simple_quadratic_test(board: Board, problem: Problem,
                          node_budget: int = milp.DEFAULT_NODE_BUDGET,
                          on_node=None) -> Verdict:
    """PASS iff the quadratic image difference is a non-negative integer
    combination of the quadratic generators."""
    sys = simple_system(board, problem)
    n_gens = sys.n_cols
    inst = milp.MilpInstance(sys, [True] * n_gens, [1] * n_gens,
                             node_budget=node_budget, on_node=on_node)
    res = milp.solve_milp(inst)
    stats = {"nodes": res.nodes, "generators": n_gens}
    if res.status == milp.INTEGRAL:
        cert = {"type": "quadratic_combination",
                "coeffs": {str(j): int(v) for j, v in enumerate(res.point) if v}}
        return Verdict(PASS, cert, stats)
    if res.status == milp.INFEASIBLE:
        return Verdict(FAIL, dict(res.transcript), stats)
    return Verdict(BUDGET, None, stats)


def decompose_play(board: Board, start: Position,
                   play: list[Move]) -> tuple[dict[int, int],
                                              dict[tuple[int, Cell], int]]:
    """Constructive quadratic witness from a legal play.

    Per step with move g and post-move position K: x(g) gains 1 and y_g(A)
    gains 1 for every bystander peg A of K (g(A) = 0).  The output satisfies
    the quadratic balance exactly and the flatness bounds by construction.
    """
    x: dict[int, int] = {}
    y: dict[tuple[int, Cell], int] = {}
    pos = start
    for m in play:
        pos = apply_move(pos, m)
        j = board.move_index[m]
        x[j] = x.get(j, 0) + 1
        support = set(m.support())
        for a in pos.pegs:
            if a not in support:
                key = (j, a)
                y[key] = y.get(key, 0) + 1
    return x, y


def witness_vector(board: Board, x: dict[int, int],
                   y: dict[tuple[int, Cell], int]) -> list[int]:
    """Evaluate a (x, y) witness over the cross index."""
    cross = cross_index(board)
    out = [0] * len(cross)
    for j, k in x.items():
        for a, b, v in QuadraticGenerator("diagonal", board.moves[j]).entries():
            out[cross.of(a, b)] += v * k
    for (j, cell), k in y.items():
        gen = QuadraticGenerator("flat", board.moves[j], cell)
        for a, b, v in gen.entries():
            out[cross.of(a, b)] += v * k
    return out


def peg_counts(board: Board, x: dict[int, int],
               y: dict[tuple[int, Cell], int]) -> dict[Cell, int]:
    """Per cell A: sum of y_g(A) plus x(g) over moves touching A."""
    p = {c: 0 for c in board.cells}
    for j, k in x.items():
        for c in board.moves[j].support():
            p[c] += k
    for (_, cell), k in y.items():
        p[cell] += k
    return p


@dataclass
class SideConstraints:
    """Toggles and budgets for the geometric side constraints."""

    window: bool = True      # per-cell bounds on p(A) from depth and height
    thickness: bool = True   # per-move caps from golden-ratio pagodas
    pairs: bool = True       # joint bounds from never-coexisting cell pairs
    horizon: int = reach.DEFAULT_HORIZON
    derive: int = 1
    certify_infinite: bool = True
    refine_thickness: bool = False

    @staticmethod
    def none() -> "SideConstraints":
        return SideConstraints(window=False, thickness=False, pairs=False)


def _window_bounds(board: Board, problem: Problem,
                   side: SideConstraints) -> dict[Cell, tuple[int, int]]:
    """Per cell: (lower, upper) bounds on p(A), from lower bounds on the
    removal depth and arrival height.

    The lower bound is min(depth, play length): a peg removed at step t
    contributes at least t, and a peg never removed contributes exactly the
    play length, whatever its depth.
    """
    k = problem.n_moves
    co_end = board.position(set(board.cells) - problem.end.pegs)
    depth_end = reach.bounded_search(board, co_end, side.horizon, "depth")
    depth_start = reach.bounded_search(board, problem.start, side.horizon,
                                       "depth")
    height_start = reach.bounded_search(board, problem.start, side.horizon,
                                        "height")
    out = {}
    for a in board.cells:
        d_end = reach.depth_lower_bound(board, a, co_end, depth_end)
        h_start = reach.height_lower_bound(board, a, problem.start,
                                           height_start)
        if (side.certify_infinite and not math.isinf(h_start)
                and a not in height_start.exact and a not in problem.start
                and reach.infinite_height_single(board, problem.start, a,
                                                 side.derive)):
            h_start = reach.INFINITY
        c = min(k,
                max(d_end - 1, 0) + max(h_start - 1, 0))
        lo = reach.depth_lower_bound(board, a, problem.start, depth_start)
        lo = k if math.isinf(lo) else min(int(lo), k)
        out[a] = (lo, k - int(c))
    return out


def simple_system(board: Board, problem: Problem) -> LinearSystem:
    """Equality system whose non-negative integer solutions are the writings
    of the quadratic image difference over all quadratic generators."""
    cross = cross_index(board)
    gens = quadratic_generators(board)
    cols = [g.vector(cross) for g in gens]
    a = [[cols[j][i] for j in range(len(cols))] for i in range(len(cross))]
    return LinearSystem(a=a, b=_quadratic_target(board, problem),
                        relations=["="] * len(cross))


def flat_layout(board: Board) -> list[tuple[int, Cell]]:
    """Column layout of the flat system: x columns come first, one per move,
    then one y column per returned (move index, bystander cell) key."""
    y_keys: list[tuple[int, Cell]] = []
    for j, m in enumerate(board.moves):
        support = set(m.support())
        for cell in board.cells:
            if cell not in support:
                y_keys.append((j, cell))
    return y_keys


def flat_side_report(board: Board, problem: Problem,
                     side: SideConstraints) -> dict:
    """JSON side-constraint data: window bounds, thickness caps, pair list.
    The report fully determines the side rows, so certificates embedding it
    can be replayed without recomputing any reachability analysis."""
    report: dict = {}
    if side.window:
        window = _window_bounds(board, problem, side)
        report["window"] = {cell_key(a): [lo, hi]
                            for a, (lo, hi) in window.items()}
    if side.thickness:
        report["thickness"] = [
            reach.thickness_bound(board, problem, m,
                                  refine=side.refine_thickness)
            for m in board.moves]
    if side.pairs:
        pair_certs = reach.infinite_height_pairs(board, problem.start,
                                                 side.derive)
        report["pairs"] = [[cell_key(pc.a), cell_key(pc.a_prime)]
                           for pc in pair_certs]
    return report


def flat_system(board: Board, problem: Problem,
                side_report: dict | None = None) -> LinearSystem:
    """The flat quadratic system: cross-coordinate balance, flatness rows,
    and any side rows recorded in side_report."""
    side_report = side_report or {}
    cross = cross_index(board)
    n_moves = len(board.moves)
    y_keys = flat_layout(board)
    y_col = {key: n_moves + i for i, key in enumerate(y_keys)}
    n_cols = n_moves + len(y_keys)

    rows: list[list[int]] = []
    rels: list[str] = []
    b: list[int] = []

    cross_rows = [[0] * n_cols for _ in range(len(cross))]
    for j, m in enumerate(board.moves):
        for a, c, v in QuadraticGenerator("diagonal", m).entries():
            cross_rows[cross.of(a, c)][j] += v
    for (j, cell), col in y_col.items():
        for a, c, v in QuadraticGenerator("flat", board.moves[j], cell).entries():
            cross_rows[cross.of(a, c)][col] += v
    rows.extend(cross_rows)
    rels.extend(["="] * len(cross))
    b.extend(_quadratic_target(board, problem))

    # Flatness: y_g(A) - x(g) <= 0.
    for (j, _), col in y_col.items():
        row = [0] * n_cols
        row[col] = 1
        row[j] = -1
        rows.append(row)
        rels.append("<=")
        b.append(0)

    def p_row(cell: Cell) -> list[int]:
        row = [0] * n_cols
        for j, m in enumerate(board.moves):
            if cell in m.support():
                row[j] = 1
        for key, col in y_col.items():
            if key[1] == cell:
                row[col] = 1
        return row

    if "window" in side_report:
        for a in board.cells:
            lo, hi = side_report["window"][cell_key(a)]
            row = p_row(a)
            if lo > 0:
                rows.append(row)
                rels.append(">=")
                b.append(lo)
            rows.append(list(row))
            rels.append("<=")
            b.append(hi)

    if "thickness" in side_report:
        for j, cap in enumerate(side_report["thickness"]):
            row = [0] * n_cols
            row[j] = 1
            rows.append(row)
            rels.append("<=")
            b.append(cap)

    if "pairs" in side_report:
        k = problem.n_moves
        for key_a, key_b in side_report["pairs"]:
            a, a2 = parse_cell_key(key_a), parse_cell_key(key_b)
            row = [pa + pb for pa, pb in zip(p_row(a), p_row(a2))]
            for j, m in enumerate(board.moves):
                support = m.support()
                if a in support and a2 in support:
                    row[j] -= 1
            rows.append(row)
            rels.append("<=")
            b.append(k)

    return LinearSystem(a=rows, b=b, relations=rels)


def flat_objective(board: Board) -> list[int]:
    return [1] * len(board.moves) + [0] * len(flat_layout(board))


def flat_quadratic_test(board: Board, problem: Problem,
                        side: SideConstraints | None = None,
                        node_budget: int = milp.DEFAULT_NODE_BUDGET,
                        on_node=None) -> Verdict:
    """PASS iff the quadratic balance admits non-negative integer move
    multiplicities x(g) and bystander counts y_g(A) with the flatness bounds
    y_g(A) <= x(g), plus any enabled side constraints."""
    if side is None:
        side = SideConstraints()
    side_report = flat_side_report(board, problem, side)
    sys = flat_system(board, problem, side_report)
    n_moves = len(board.moves)
    y_keys = flat_layout(board)
    n_cols = n_moves + len(y_keys)
    inst = milp.MilpInstance(sys, [True] * n_cols, flat_objective(board),
                             node_budget=node_budget, on_node=on_node)
    res = milp.solve_milp(inst)
    stats = {"nodes": res.nodes, "columns": n_cols}
    if res.status == milp.INTEGRAL:
        x = {str(j): int(res.point[j]) for j in range(n_moves) if res.point[j]}
        y = {f"{j}:{cell_key(cell)}": int(res.point[n_moves + i])
             for i, (j, cell) in enumerate(y_keys) if res.point[n_moves + i]}
        cert = {"type": "flat_quadratic_combination", "x": x, "y": y,
                "side": side_report}
        return Verdict(PASS, cert, stats)
    if res.status == milp.INFEASIBLE:
        cert = dict(res.transcript)
        cert["side"] = side_report
        return Verdict(FAIL, cert, stats)
    return Verdict(BUDGET, None, stats)
