"""Boards, positions and moves.

A board is a set of cells in the plane; a move jumps a peg over an adjacent
peg into an empty cell, removing the jumped peg.  This script tours the
standard boards and the structural predicate behind the lattice test.
"""

from pegcert.board import (equivalence_classes, has_no_isolated_point,
                           parse_board, render_grid, standard_board)

for name in ("english", "french", "wiegleb"):
    b = standard_board(name)
    print(f"{name}: {len(b)} cells, {len(b.moves)} moves, "
          f"no isolated point: {has_no_isolated_point(b)}")

# The english board, full except the centre — the classic central game.
b = standard_board("english")
start = b.position(set(b.cells) - {(3, 3)})
print()
print(render_grid(b, pegs=start))

# A move is a triple (p, q, r): peg at p jumps over q into r.
m = b.moves[0]
print(f"first move: {m.p} over {m.q} into {m.r}")

# On small boards the neighbour-equivalence classes are easy to inspect.
# A class with no move-middle in it is an "isolated point"; such boards
# have a move matrix of deficient rank and the lattice test is strictly
# stronger than parity there.
tiny = parse_board("ooo\nooo\nooo")
print()
print("3x3 classes:", [sorted(c) for c in equivalence_classes(tiny)])
print("3x3 has no isolated point:", has_no_isolated_point(tiny))
