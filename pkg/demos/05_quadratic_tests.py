"""Quadratic tests: balance equations over pairs of cells.

Every legal play decomposes the pair-tensor difference of start and end
into move contributions x(g) and interaction terms y_g(A) with
0 <= y_g(A) <= x(g) ("flatness").  Requiring an exact such decomposition —
plus windows derived from depth/height reachability — is strictly stronger
than all the linear tests.
"""

import random

from pegcert import quadratic
from pegcert.board import parse_board
from pegcert.problem import parse_problem

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from conftest import random_playout  # noqa: E402

b = parse_board("oooo\noooo\nooo#")
rng = random.Random(1)
while True:
    start, play, end = random_playout(b, rng, max_moves=5)
    if len(play) >= 3:
        break
x, y = quadratic.decompose_play(b, start, play)
k = len(play)
p = quadratic.peg_counts(b, x, y)
print(f"play of {k} moves decomposed; flatness holds:",
      all(0 <= v <= x[j] for (j, _), v in y.items()))
print("total-count identity 2*sum(p) = k(|I|+|J|+3):",
      2 * sum(p.values()) == k * (len(start) + len(end) + 3))

# The committed separator fixture: all linear tests and the simple
# quadratic test pass, yet no flat decomposition exists.
fixture = Path(__file__).resolve().parent.parent / "fixtures"
pr = parse_problem((fixture / "separator_simple_vs_flat.problem").read_text())
simple = quadratic.simple_quadratic_test(pr.board, pr)
flat = quadratic.flat_quadratic_test(pr.board, pr)
print(f"separator problem: simple={simple.status}, flat={flat.status}")
print("flat refutation certificate type:", flat.certificate["type"])
