"""Problems: an ordered pair of positions on one board."""

from __future__ import annotations

from dataclasses import dataclass

from .board import Board, BoardError, Position, parse_board, parse_position


@dataclass(frozen=True)
class Problem:
    """Go from start (I) to end (J) by legal moves."""

    board: Board
    start: Position
    end: Position

    def __post_init__(self):
        for pos in (self.start, self.end):
            stray = pos.pegs - set(self.board.cells)
            if stray:
                raise BoardError(f"position leaves the board: {sorted(stray)}")

    def delta(self) -> list[int]:
        """1_I - 1_J as an integer vector over the board's cell order."""
        return [
            (1 if c in self.start else 0) - (1 if c in self.end else 0)
            for c in self.board.cells
        ]

    def delta_mask(self) -> int:
        """(1_I - 1_J) mod 2 as a bitmask over cell indices."""
        return self.board.mask(self.start) ^ self.board.mask(self.end)

    @property
    def n_moves(self) -> int:
        return len(self.start) - len(self.end)


def parse_problem(text: str) -> Problem:
    """Parse "grid --- grid" into a Problem; the board comes from the first grid."""
    chunks = [c.strip("\n") for c in text.split("---")]
    if len(chunks) != 2:
        raise BoardError("problem file must contain exactly two grids split by ---")
    board = parse_board(chunks[0])
    start = parse_position(board, chunks[0])
    end = parse_position(board, chunks[1])
    return Problem(board, start, end)


def problem_to_text(problem: Problem) -> str:
    from .board import render_grid

    return (render_grid(problem.board, pegs=problem.start) + "\n---\n"
            + render_grid(problem.board, pegs=problem.end) + "\n")
