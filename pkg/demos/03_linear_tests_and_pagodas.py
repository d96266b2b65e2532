"""The three linear tests: lattice, rational cone, non-negative integers.

Each move changes the position by a fixed integer vector.  A problem can
only be feasible if the start/end difference is an integer combination of
move vectors (lattice), a non-negative rational combination (cone), and a
non-negative integer one (ILP).  Failures come with exact certificates:
a pagoda function (Farkas dual) for the cone, a branch-and-bound
transcript for the ILP.
"""

import json

from pegcert import cone
from pegcert.board import standard_board
from pegcert.problem import parse_problem

# Parity passes here, but the target is not in the move lattice.
pr = parse_problem("oooo\noooo\n---\no...\n....\n")
print("lattice:", cone.lattice_test(pr.board, pr).status)

# A cone failure yields a pagoda: a cell weighting that no move can
# increase, yet the end position outweighs the start.
hard = parse_problem("oo.\n---\n.o.\n")
v = cone.rational_cone_test(hard.board, hard)
print("cone:", v.status)
print("pagoda certificate:",
      json.dumps(v.certificate["values"], sort_keys=True))
from pegcert.verdict import cell_key
pi = cone.ResourceCount.from_values(
    hard.board,
    {c: v.certificate["values"][cell_key(c)] for c in hard.board.cells})
print("pagoda verifies:", cone.verify_pagoda(hard.board, pi))

# On a board with no isolated point, twice a unit vector always decomposes
# as an integer combination of moves — the constructive heart of the
# lattice test's fast path.
b = standard_board("english")
coeffs = cone.decompose_double_point(b, (3, 3))
print("double point at centre uses",
      sum(1 for c in coeffs.values() if c), "moves, combination:",
      cone.combination_vector(b, coeffs) ==
      [2 if c == (3, 3) else 0 for c in b.cells])

# The non-negative integer test separates strictly from the cone: the
# committed fixture passes lattice and cone yet fails here, with a
# replayable branch-and-bound transcript as certificate.
import pathlib
fixture = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
sep = parse_problem(
    (fixture / "separator_cone_vs_nonneg.problem").read_text())
print("separator fixture: cone",
      cone.rational_cone_test(sep.board, sep).status)
nn = cone.nonneg_integer_test(sep.board, sep)
print("separator fixture: nonneg integer", nn.status,
      "| certificate type:", nn.certificate["type"])
