"""GF(2) linear algebra, witnesses and the parity feasibility test.

Vectors are int bitsets (bit i = coordinate i); matrices are lists of row
bitsets with an explicit column count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import Board
from .problem import Problem
from .verdict import FAIL, PASS, Verdict, cell_key


@dataclass(frozen=True)
class Witness:
    """GF(2) cell function with values(p) + values(q) = values(r) at every move."""

    bits: int

    def value(self, board: Board, cell) -> int:
        return (self.bits >> board.cell_index[cell]) & 1

    def to_certificate(self, board: Board) -> dict:
        return {
            "type": "witness",
            "values": {cell_key(c): (self.bits >> i) & 1
                       for i, c in enumerate(board.cells)},
        }


def rref_gf2(rows: list[int], n_cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column per row)."""
    work = [r for r in rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for col in range(n_cols):
        bit = 1 << col
        pivot_row = None
        for i, r in enumerate(work):
            if r & bit:
                pivot_row = work.pop(i)
                break
        if pivot_row is None:
            continue
        for i, r in enumerate(work):
            if r & bit:
                work[i] = r ^ pivot_row
        out = [r ^ pivot_row if r & bit else r for r in out]
        out.append(pivot_row)
        pivots.append(col)
    return out, pivots


def rank_gf2(rows: list[int], n_cols: int) -> int:
    return len(rref_gf2(rows, n_cols)[0])


def nullspace_gf2(rows: list[int], n_cols: int) -> list[int]:
    """Deterministic basis of {x : M x = 0} from the RREF of M."""
    reduced, pivots = rref_gf2(rows, n_cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = 1 << fc
        for row, pc in zip(reduced, pivots):
            if row & (1 << fc):
                vec |= 1 << pc
        basis.append(vec)
    return basis


def in_rowspan_gf2(vec: int, rows: list[int], n_cols: int) -> bool:
    base = rank_gf2(rows, n_cols)
    return rank_gf2(rows + [vec], n_cols) == base


def move_matrix_gf2(board: Board) -> list[int]:
    """Rows = moves as 0/1 vectors over cells (support {p, q, r})."""
    idx = board.cell_index
    return [
        (1 << idx[m.p]) | (1 << idx[m.q]) | (1 << idx[m.r])
        for m in board.moves
    ]


def witness_basis(board: Board) -> list[Witness]:
    """Basis of all GF(2) functions orthogonal to every move."""
    return [Witness(b) for b in nullspace_gf2(move_matrix_gf2(board), len(board))]


def rule_of_three_witnesses(board: Board) -> list[Witness]:
    """Witnesses restricted from the 3-periodic plane solutions.

    Every assignment on a 2x2 seed square extends over the plane by the
    recurrence s(n) + s(n+1) = s(n+2) along rows and columns; the extension
    is 3-periodic both ways, so a 3x3 table determines the whole function.
    """
    out = []
    seen = set()
    for seed in range(16):
        a = seed & 1
        b = (seed >> 1) & 1
        c = (seed >> 2) & 1
        d = (seed >> 3) & 1
        table = [[a, b, a ^ b], [c, d, c ^ d]]
        table.append([table[0][j] ^ table[1][j] for j in range(3)])
        # Row/column recurrences are consistent for every seed over GF(2).
        for i in range(3):
            assert table[i][2] == table[i][0] ^ table[i][1]
            assert table[2][i] == table[0][i] ^ table[1][i]
        bits = 0
        for i, (r, col) in enumerate(board.cells):
            if table[r % 3][col % 3]:
                bits |= 1 << i
        if bits not in seen:
            seen.add(bits)
            out.append(Witness(bits))
    return out


def is_witness(board: Board, w: Witness) -> bool:
    """Check values(p) + values(q) + values(r) = 0 over GF(2) at every move."""
    idx = board.cell_index
    for m in board.moves:
        v = ((w.bits >> idx[m.p]) ^ (w.bits >> idx[m.q]) ^ (w.bits >> idx[m.r])) & 1
        if v:
            return False
    return True


def f2_test(board: Board, problem: Problem) -> Verdict:
    """Parity test: every basis witness must be orthogonal to 1_I - 1_J mod 2."""
    h = problem.delta_mask()
    for w in witness_basis(board):
        if bin(w.bits & h).count("1") & 1:
            return Verdict(FAIL, w.to_certificate(board))
    return Verdict(PASS)
