"""Certified infeasibility tests for peg-solitaire problems.

A ladder of ever-stronger tests — parity witnesses over GF(2), integer
lattice membership, rational cone membership, non-negative integer
combinations, and quadratic systems with flatness and reachability side
constraints — each FAIL backed by a machine-verifiable certificate.
"""

from .board import (Board, BoardError, Cell, IllegalMoveError, Move, Position,
                    apply_move, connected_subboards, has_no_isolated_point,
                    legal_moves, parse_board, parse_position, plays_to,
                    render_grid, standard_board)
from .problem import Problem, parse_problem, problem_to_text
from .verdict import BUDGET, FAIL, PASS, Verdict
from .engine import (PipelineConfig, Report, oracle_feasible, run_pipeline,
                     verify_certificate)

__version__ = "0.1.0"

__all__ = [
    "Board", "BoardError", "Cell", "IllegalMoveError", "Move", "Position",
    "apply_move", "connected_subboards", "has_no_isolated_point",
    "legal_moves", "parse_board", "parse_position", "plays_to", "render_grid",
    "standard_board", "Problem", "parse_problem", "problem_to_text",
    "BUDGET", "FAIL", "PASS", "Verdict", "PipelineConfig", "Report",
    "oracle_feasible", "run_pipeline", "verify_certificate", "__version__",
]
