"""Linear-level infeasibility tests: lattice, rational cone, non-negative
integers; pagoda functions and their verification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
import random

from gmpy2 import mpq

from .board import Board, Cell, Move, has_no_isolated_point
from .problem import Problem
from . import gf2
from .exact import (LinearSystem, NoIntegerSolution, hnf, hnf_solve, lp_solve,
                    rank_rational)
from . import milp
from .verdict import BUDGET, FAIL, PASS, Verdict, cell_key


@dataclass(frozen=True)
class ResourceCount:
    """Rational cell function with values(p) + values(q) >= values(r) at moves."""

    values: tuple  # ((cell, mpq), ...) in board cell order

    def value(self, cell: Cell):
        for c, v in self.values:
            if c == cell:
                return v
        raise KeyError(cell)

    def as_dict(self) -> dict:
        return dict(self.values)

    def to_certificate(self, extra: dict | None = None) -> dict:
        cert = {"type": "pagoda",
                "values": {cell_key(c): str(v) for c, v in self.values}}
        if extra:
            cert.update(extra)
        return cert

    @staticmethod
    def from_values(board: Board, values: dict) -> "ResourceCount":
        return ResourceCount(tuple((c, mpq(values[c])) for c in board.cells))


def verify_pagoda(board: Board, pi: ResourceCount) -> bool:
    """Check values(p) + values(q) >= values(r) at every move."""
    v = pi.as_dict()
    return all(v[m.p] + v[m.q] >= v[m.r] for m in board.moves)


def pagoda_score(pi: ResourceCount, h: list[int] | list, board: Board):
    """Inner product <pi, h> with h over the board's cell order."""
    v = pi.as_dict()
    return sum((v[c] * h[i] for i, c in enumerate(board.cells) if h[i]), mpq(0))


def move_matrix(board: Board) -> list[list[int]]:
    """Cells x moves integer matrix; column g is e_p + e_q - e_r."""
    return [[m.coefficient(c) for m in board.moves] for c in board.cells]


@lru_cache(maxsize=256)
def _board_hnf(board: Board):
    return hnf(move_matrix(board))


@lru_cache(maxsize=256)
def _board_matrix(board: Board) -> tuple:
    return tuple(tuple(row) for row in move_matrix(board))


def lattice_test(board: Board, problem: Problem) -> Verdict:
    """PASS iff 1_I - 1_J is an integer combination of moves.

    On boards with no isolated point this is equivalent to the parity test,
    which is the fast path; otherwise membership is decided by Hermite
    normal form.
    """
    if has_no_isolated_point(board):
        v = gf2.f2_test(board, problem)
        v.stats["path"] = "f2-equivalent"
        return v
    H, U = _board_hnf(board)
    try:
        x = hnf_solve(H, U, problem.delta())
    except NoIntegerSolution as ex:
        cert = dict(ex.proof)
        cert["h"] = problem.delta()
        return Verdict(FAIL, cert, {"path": "hnf"})
    cert = {"type": "integer_combination",
            "coeffs": {str(j): int(v) for j, v in enumerate(x) if v},
            "signed": True}
    return Verdict(PASS, cert, {"path": "hnf"})


def cone_system(board: Board, h: list, upper: list | None = None) -> LinearSystem:
    """Psi(x) = h with x >= 0 (optionally bounded above per move)."""
    a = [list(row) for row in _board_matrix(board)]
    return LinearSystem(a=a, b=list(h), relations=["="] * len(board),
                        upper=list(upper) if upper is not None else None)


def rational_cone_test(board: Board, problem: Problem) -> Verdict:
    """PASS iff 1_I - 1_J is a non-negative rational combination of moves;
    a FAIL's Farkas vector re-emerges as a separating pagoda function."""
    h = problem.delta()
    sys = cone_system(board, h)
    out = lp_solve(sys, [1] * len(board.moves), "min")
    if out.status == "infeasible":
        pi = ResourceCount(tuple(
            (c, -out.farkas[i]) for i, c in enumerate(board.cells)))
        assert verify_pagoda(board, pi)
        assert pagoda_score(pi, h, board) < 0
        return Verdict(FAIL, pi.to_certificate())
    cert = {"type": "rational_combination",
            "coeffs": {str(j): str(v) for j, v in enumerate(out.point) if v}}
    return Verdict(PASS, cert)


def nonneg_integer_test(board: Board, problem: Problem | None = None,
                        bounds: dict[int, int] | None = None,
                        target: list | None = None,
                        node_budget: int = milp.DEFAULT_NODE_BUDGET,
                        on_node=None) -> Verdict:
    """PASS iff the target (default 1_I - 1_J) is a non-negative *integer*
    combination of moves; optional per-move upper bounds tighten the search."""
    h = list(target) if target is not None else problem.delta()
    upper = None
    if bounds:
        upper = [mpq(bounds[j]) if j in bounds else None
                 for j in range(len(board.moves))]
    sys = cone_system(board, h, upper)
    inst = milp.MilpInstance(sys, [True] * len(board.moves),
                             [1] * len(board.moves), node_budget=node_budget,
                             on_node=on_node)
    res = milp.solve_milp(inst)
    stats = {"nodes": res.nodes}
    if res.status == milp.INTEGRAL:
        cert = {"type": "integer_combination",
                "coeffs": {str(j): int(v) for j, v in enumerate(res.point) if v}}
        return Verdict(PASS, cert, stats)
    if res.status == milp.INFEASIBLE:
        cert = dict(res.transcript)
        if bounds:
            cert["bounds"] = {str(j): int(v) for j, v in bounds.items()}
        return Verdict(FAIL, cert, stats)
    return Verdict(BUDGET, None, stats)


def decompose_double_point(board: Board, p: Cell) -> dict[int, int]:
    """Integer move coefficients summing exactly to 2*e_p, built along a
    neighbor chain from p to a middle point (requires no isolated point)."""
    if p not in board.cell_index:
        raise ValueError(f"{p} is not on the board")
    middles = {m.q for m in board.moves}
    # BFS over the extremity graph from p to the nearest middle point.
    step_move: dict[Cell, Move] = {}   # move whose p is the cell, r the parent
    prev: dict[Cell, Cell] = {p: p}
    queue = deque([p])
    goal = p if p in middles else None
    while queue and goal is None:
        cur = queue.popleft()
        for m in board.moves:
            if m.p == cur and m.r not in prev:
                prev[m.r] = cur
                step_move[m.r] = m
                if m.r in middles:
                    goal = m.r
                    break
                queue.append(m.r)
    if goal is None:
        raise ValueError("isolated point: no chain to a middle point")
    coeffs: dict[int, int] = {}

    def add(m: Move, k: int) -> None:
        j = board.move_index[m]
        coeffs[j] = coeffs.get(j, 0) + k
        if not coeffs[j]:
            del coeffs[j]

    # 2e_p = sum over chain of (g - g') + (g_n + g_n') at the middle point.
    cur = goal
    chain: list[Move] = []
    while cur != p:
        m = step_move[cur]
        chain.append(m)
        cur = prev[cur]
    for m in chain:
        # m - reversed(m) = 2e_{m.p} - 2e_{m.r}; the chain telescopes to
        # 2e_p - 2e_goal.
        add(m, 1)
        add(m.reversed(), -1)
    gm = next(m for m in board.moves if m.q == goal)
    add(gm, 1)
    add(gm.reversed(), 1)
    return coeffs


def combination_vector(board: Board, coeffs: dict[int, int]) -> list[int]:
    """Evaluate an integer move combination as a cell vector."""
    out = [0] * len(board)
    idx = board.cell_index
    for j, k in coeffs.items():
        m = board.moves[int(j)]
        out[idx[m.p]] += k
        out[idx[m.q]] += k
        out[idx[m.r]] -= k
    return out


def move_basis(board: Board) -> list[int]:
    """Greedy basis of the rational span of moves (lowest indices first)."""
    rows: list[list] = []
    basis: list[int] = []
    mat = _board_matrix(board)
    n = len(board)
    for j in range(len(board.moves)):
        col = [mat[i][j] for i in range(n)]
        cand = rows + [col]
        if rank_rational(cand) > len(rows):
            rows = cand
            basis.append(j)
    return basis


def conjecture_probes(board: Board, samples: int = 50, seed: int = 0,
                      coeff_range: int = 2,
                      node_budget: int = 200_000) -> dict:
    """Experimental probes of the two open inclusion conjectures; reports
    counterexamples when found, never asserts truth."""
    if not has_no_isolated_point(board):
        raise ValueError("probes require a board with no isolated point")
    rng = random.Random(seed)
    mat = _board_matrix(board)
    n, nm = len(board), len(board.moves)

    H_full, U_full = _board_hnf(board)
    # Subsets of moves whose half-coefficients still sum to an integer
    # vector: the GF(2) kernel of the move-column matrix.
    parity_rows = []
    for i in range(n):
        bits = 0
        for j in range(nm):
            if mat[i][j] & 1:
                bits |= 1 << j
        parity_rows.append(bits)
    kernel = gf2.nullspace_gf2(parity_rows, nm)
    half_report = {"tested": 0, "violations": 0, "instances": []}
    for _ in range(samples):
        # Non-negative half-integer combination, integral by construction of
        # the odd-coefficient support; in the rational cone by construction.
        subset = 0
        for k in kernel:
            if rng.random() < 0.5:
                subset ^= k
        z = [mpq(2 * rng.randint(0, coeff_range) + ((subset >> j) & 1), 2)
             for j in range(nm)]
        hq = [sum((mat[i][j] * z[j] for j in range(nm) if z[j]), mpq(0))
              for i in range(n)]
        if not any(hq) or any(v.denominator != 1 for v in hq):
            continue
        h = [int(v) for v in hq]
        try:
            hnf_solve(H_full, U_full, h)
        except NoIntegerSolution:
            continue
        half_report["tested"] += 1
        doubled = [2 * v for v in h]
        v = nonneg_integer_test(board, target=doubled, node_budget=node_budget)
        if v.failed:
            half_report["violations"] += 1
            half_report["instances"].append({"h": h})

    basis = move_basis(board)
    bmat = [[mat[i][j] for j in basis] for i in range(n)]
    H, U = hnf(bmat)
    basis_report = {"tested": 0, "violations": 0, "instances": []}
    for i, cell in enumerate(board.cells):
        b = [0] * n
        b[i] = 2
        basis_report["tested"] += 1
        try:
            hnf_solve(H, U, b)
        except NoIntegerSolution:
            basis_report["violations"] += 1
            basis_report["instances"].append({"cell": cell_key(cell)})

    return {"seed": seed, "samples": samples,
            "double_in_integer_cone": half_report,
            "double_point_in_basis_span": basis_report,
            "basis_size": len(basis)}
