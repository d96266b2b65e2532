"""Reachability diagrams and thickness bounds.

Depth(A) is the least number of moves before the peg at A can first be
removed; Height(A) the least number before a peg can first appear at A.
Bounded search gives exact small values and lower bounds beyond the
horizon; golden-ratio pagodas certify that some cells can never be
reached at all.  Thickness bounds cap how often any single move can
occur in a play.
"""

from pegcert import reach
from pegcert.board import parse_board, standard_board
from pegcert.problem import Problem

b = standard_board("english")
start = b.position(set(b.cells) - {(3, 3)})

frontier = reach.bounded_search(b, start, k=4, mode="depth")
depths = {c: reach.depth_lower_bound(b, c, start, frontier)
          for c in b.cells}
print("depth diagram (central game):")
print(reach.render_diagram(b, depths))

# The golden pagoda pi_m for a move m satisfies <pi_m, m> = 1 exactly in
# Z[rho], rho = (sqrt(5)-1)/2, and <pi_m, m'> <= 1 for every other move —
# the engine's source of universal per-move thickness caps.
m = b.moves[0]
pi = reach.golden_pagoda(b, m)
v = pi.as_dict()
print(f"golden pagoda at {m.p}->{m.r}: <pi, m> =",
      v[m.p] + v[m.q] - v[m.r])

pr = Problem(b, start, b.position([(3, 3)]))
bounds = [reach.thickness_bound(b, pr, mv) for mv in b.moves]
print(f"thickness bounds over all 76 moves: max {max(bounds)} "
      f"(universal cap {reach.UNIVERSAL_THICKNESS})")

# Infinite height: from a sparse start, some cells are provably never
# reached, certified by an exact separating pagoda.
tiny = parse_board("oooo\noooo")
sparse = tiny.position([(0, 0), (0, 1)])
never = [c for c in tiny.cells
         if c not in sparse and reach.infinite_height_single(tiny, sparse, c)]
print("cells never reachable from a 2-peg corner start:", sorted(never))
