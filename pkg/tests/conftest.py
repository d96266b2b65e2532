"""Shared fixtures and independent reference oracles for the test suite.

Oracles here re-derive expected values from first principles (brute-force
enumeration, Fraction-based linear algebra) and never call the code paths
they check.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pegcert.board import (Board, Position, apply_move, legal_moves,
                           parse_board, standard_board)
from pegcert.problem import Problem


@pytest.fixture(scope="session")
def english():
    return standard_board("english")


@pytest.fixture(scope="session")
def french():
    return standard_board("french")


@pytest.fixture(scope="session")
def wiegleb():
    return standard_board("wiegleb")


@pytest.fixture(scope="session")
def box34():
    return parse_board("oooo\noooo\noooo")


@pytest.fixture(scope="session")
def box33():
    return parse_board("ooo\nooo\nooo")


def random_position(board: Board, rng: random.Random,
                    density: float | None = None) -> Position:
    if density is None:
        density = rng.uniform(0.2, 0.9)
    return board.position(c for c in board.cells if rng.random() < density)


def random_problem(board: Board, rng: random.Random,
                   max_end: int | None = None) -> Problem:
    start = random_position(board, rng)
    hi = len(start) if max_end is None else min(max_end, len(start))
    end = rng.sample(list(board.cells), rng.randint(0, max(hi, 0)))
    return Problem(board, start, board.position(end))


def random_playout(board: Board, rng: random.Random,
                   max_pegs: int | None = None,
                   max_moves: int | None = None) -> tuple[Position, list, Position]:
    """A legal play from a random start: (start, moves, end)."""
    cells = list(board.cells)
    n = len(cells) if max_pegs is None else min(max_pegs, len(cells))
    start = board.position(rng.sample(cells, rng.randint(1, n)))
    pos = start
    play = []
    while max_moves is None or len(play) < max_moves:
        moves = legal_moves(board, pos)
        if not moves or rng.random() < 0.15:
            break
        m = rng.choice(moves)
        pos = apply_move(pos, m)
        play.append(m)
    return start, play, pos


def all_reachable_masks(board: Board, start: Position,
                        cap: int = 500_000) -> set[int]:
    """Exhaustive closure of positions reachable from start (reference BFS)."""
    move_masks = board.move_masks()
    seen = {board.mask(start)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for mask in frontier:
            for pq, r, _ in move_masks:
                if mask & pq == pq and not mask & r:
                    new = (mask & ~pq) | r
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
        if len(seen) > cap:
            raise RuntimeError("reference closure too large")
        frontier = nxt
    return seen


def exact_depth(board: Board, a, start: Position) -> float:
    """Reference exact removal depth of the peg at a from start (BFS)."""
    if a not in start:
        return 0
    bit = 1 << board.cell_index[a]
    move_masks = board.move_masks()
    seen = {board.mask(start)}
    frontier = list(seen)
    step = 0
    while frontier:
        step += 1
        nxt = []
        for mask in frontier:
            for pq, r, _ in move_masks:
                if mask & pq == pq and not mask & r:
                    new = (mask & ~pq) | r
                    if not new & bit:
                        return step
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
        frontier = nxt
    return float("inf")


def exact_height(board: Board, a, start: Position) -> float:
    """Reference exact arrival height of a peg on a from start (BFS)."""
    if a in start:
        return 0
    bit = 1 << board.cell_index[a]
    move_masks = board.move_masks()
    seen = {board.mask(start)}
    frontier = list(seen)
    step = 0
    while frontier:
        step += 1
        nxt = []
        for mask in frontier:
            for pq, r, _ in move_masks:
                if mask & pq == pq and not mask & r:
                    new = (mask & ~pq) | r
                    if new & bit:
                        return step
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
        frontier = nxt
    return float("inf")


def fraction_rank(rows) -> int:
    """Reference rank over the rationals using Fraction arithmetic."""
    work = [[Fraction(v) for v in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = Fraction(1) / work[row][col]
        work[row] = [v * inv for v in work[row]]
        for i in range(len(work)):
            if i != row and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[row])]
        rank += 1
        row += 1
        if row == len(work):
            break
    return rank
