"""GF(2) witnesses: the cheapest impossibility proofs.

A witness is a set of cells whose characteristic vector is orthogonal (mod 2)
to every move.  If start and end disagree on a witness, no play connects
them.  The english board has a 4-dimensional witness space, spanned by
3-periodic diagonal colourings.
"""

from pegcert import gf2
from pegcert.board import render_grid, standard_board
from pegcert.problem import Problem

b = standard_board("english")
basis = gf2.witness_basis(b)
print(f"witness space dimension: {len(basis)}")
for w in basis:
    print()
    print(render_grid(b, {c: str(w.value(b, c)) for c in b.cells}))

# The rule-of-three colourings span the same space.
three = gf2.rule_of_three_witnesses(b)
print("3-periodic witnesses are witnesses:",
      all(gf2.is_witness(b, w) for w in three))
print("and they span the full space:",
      gf2.rank_gf2([w.bits for w in three], len(b)) == len(basis))

# The french central game is impossible: every single-survivor target is
# refuted by parity alone.
fr = standard_board("french")
start = fr.position(set(fr.cells) - {(3, 3)})
refuted = sum(
    gf2.f2_test(fr, Problem(fr, start, fr.position([t]))).failed
    for t in fr.cells)
print(f"french central game: {refuted}/{len(fr)} targets refuted by parity")
