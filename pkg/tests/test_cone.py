import random
from itertools import product

import pytest
from gmpy2 import mpq

from pegcert import cone, gf2
from pegcert.board import Board, parse_board, standard_board
from pegcert.problem import Problem

from conftest import fraction_rank, random_playout, random_problem


class TestPagoda:
    def test_constant_function_is_pagoda(self):
        b = standard_board("english")
        pi = cone.ResourceCount.from_values(b, {c: 1 for c in b.cells})
        assert cone.verify_pagoda(b, pi)

    def test_violating_function_rejected(self):
        b = parse_board("ooo")
        pi = cone.ResourceCount.from_values(b, {(0, 0): 0, (0, 1): 0,
                                                (0, 2): 1})
        assert not cone.verify_pagoda(b, pi)

    def test_score_is_inner_product(self):
        b = parse_board("ooo")
        pi = cone.ResourceCount.from_values(
            b, {(0, 0): mpq(1, 2), (0, 1): 2, (0, 2): -1})
        assert cone.pagoda_score(pi, [1, 0, -1], b) == mpq(3, 2)

    def test_pagoda_never_increases_under_play(self):
        # The defining property: applying a legal move never raises the score.
        from pegcert.board import apply_move, legal_moves
        rng = random.Random(1)
        b = parse_board("oooo\noooo\noooo")
        values = {c: mpq(rng.randint(0, 4)) for c in b.cells}
        # Repair into a pagoda: raise r-values never, lower them greedily.
        for _ in range(50):
            for m in b.moves:
                if values[m.p] + values[m.q] < values[m.r]:
                    values[m.r] = values[m.p] + values[m.q]
        pi = cone.ResourceCount.from_values(b, values)
        assert cone.verify_pagoda(b, pi)
        for _ in range(20):
            start, play, end = random_playout(b, rng)
            s = sum(values[c] for c in start.pegs)
            e = sum(values[c] for c in end.pegs)
            assert s >= e


class TestLattice:
    def test_move_vector_is_in_lattice(self):
        b = parse_board("oooo")
        m = b.moves[0]
        pr = Problem(b, b.position([m.p, m.q]), b.position([m.r]))
        assert cone.lattice_test(b, pr).passed

    def test_agrees_with_f2_without_isolated_point(self, box34):
        rng = random.Random(11)
        for _ in range(100):
            pr = random_problem(box34, rng)
            assert (cone.lattice_test(box34, pr).status
                    == gf2.f2_test(box34, pr).status)

    def test_hnf_path_on_isolated_board(self):
        # 2x2 board: no moves at all, lattice is {0}.
        b = parse_board("oo\noo")
        pr = Problem(b, b.position([(0, 0)]), b.position([(0, 1)]))
        v = cone.lattice_test(b, pr)
        assert v.failed
        assert v.certificate["type"] == "hnf_proof"
        identity = Problem(b, b.position([(0, 0)]), b.position([(0, 0)]))
        assert cone.lattice_test(b, identity).passed

    def test_pass_certificate_substitutes(self, box34):
        rng = random.Random(13)
        found = 0
        for _ in range(80):
            pr = random_problem(box34, rng)
            v = cone.lattice_test(box34, pr)
            if v.passed and v.certificate:
                coeffs = {int(k): v2 for k, v2
                          in v.certificate.get("coeffs", {}).items()}
                if coeffs:
                    assert cone.combination_vector(box34, coeffs) == pr.delta()
                    found += 1
        # The f2-equivalent path carries no coefficients; force the hnf path.
        H, U = cone._board_hnf(box34)
        from pegcert.exact import hnf_solve
        pr = Problem(box34, box34.position([(0, 0), (0, 1)]),
                     box34.position([(0, 2)]))
        x = hnf_solve(H, U, pr.delta())
        coeffs = {j: v for j, v in enumerate(x) if v}
        assert cone.combination_vector(box34, coeffs) == pr.delta()


class TestRationalCone:
    def test_single_move_passes(self):
        b = parse_board("ooo")
        m = b.moves[0]
        pr = Problem(b, b.position([m.p, m.q]), b.position([m.r]))
        v = cone.rational_cone_test(b, pr)
        assert v.passed

    def test_fail_emits_separating_pagoda(self):
        b = parse_board("ooo")
        # Reversed direction: -g is not in the non-negative cone.
        m = b.moves[0]
        pr = Problem(b, b.position([m.r]), b.position([m.p, m.q]))
        v = cone.rational_cone_test(b, pr)
        assert v.failed
        cert = v.certificate
        assert cert["type"] == "pagoda"
        values = {c: mpq(cert["values"][f"{c[0]},{c[1]}"]) for c in b.cells}
        pi = cone.ResourceCount.from_values(b, values)
        assert cone.verify_pagoda(b, pi)
        assert cone.pagoda_score(pi, pr.delta(), b) < 0

    def test_random_verdicts_carry_evidence(self, box34):
        rng = random.Random(17)
        for _ in range(60):
            pr = random_problem(box34, rng)
            v = cone.rational_cone_test(box34, pr)
            if v.passed:
                total = [mpq(0)] * len(box34)
                for k, val in v.certificate["coeffs"].items():
                    m = box34.moves[int(k)]
                    q = mpq(val)
                    assert q >= 0
                    total[box34.cell_index[m.p]] += q
                    total[box34.cell_index[m.q]] += q
                    total[box34.cell_index[m.r]] -= q
                assert total == [mpq(x) for x in pr.delta()]


class TestNonnegInteger:
    def test_playout_targets_pass(self, box34):
        rng = random.Random(19)
        for _ in range(15):
            start, play, end = random_playout(box34, rng)
            pr = Problem(box34, start, end)
            v = cone.nonneg_integer_test(box34, pr)
            assert v.passed
            coeffs = {int(k): x for k, x in v.certificate["coeffs"].items()}
            assert all(x >= 0 for x in coeffs.values())
            assert cone.combination_vector(box34, coeffs) == pr.delta()

    def test_fail_transcript_replays(self):
        b = parse_board("ooo")
        m = b.moves[0]
        pr = Problem(b, b.position([m.r]), b.position([m.p, m.q]))
        v = cone.nonneg_integer_test(b, pr)
        assert v.failed
        from pegcert import milp
        sys = cone.cone_system(b, pr.delta())
        assert milp.replay_transcript(sys, [1] * len(b.moves), v.certificate)

    def test_bounds_tighten(self, box34):
        # A target needing a move twice fails when that move is capped at 1.
        b = box34
        m = b.moves[0]
        target = [2 * m.coefficient(c) for c in b.cells]
        unbounded = cone.nonneg_integer_test(b, target=target)
        assert unbounded.passed
        bounded = cone.nonneg_integer_test(
            b, target=target, bounds={j: 0 for j in range(len(b.moves))})
        assert bounded.failed
        assert bounded.certificate["bounds"]

    def test_budget_status(self):
        b = parse_board("oooo\noooo\noooo")
        pr = Problem(b, b.full(), b.position([(0, 0)]))
        v = cone.nonneg_integer_test(b, pr, node_budget=1)
        assert v.status in ("pass", "budget_exhausted")


class TestDoublePoint:
    @pytest.mark.parametrize("name", ["english", "french", "wiegleb"])
    def test_every_cell_decomposes(self, name):
        b = standard_board(name)
        for p in b.cells:
            coeffs = cone.decompose_double_point(b, p)
            expected = [2 if c == p else 0 for c in b.cells]
            assert cone.combination_vector(b, coeffs) == expected

    def test_off_board_rejected(self):
        b = parse_board("ooo")
        with pytest.raises(ValueError):
            cone.decompose_double_point(b, (9, 9))

    def test_isolated_point_rejected(self):
        b = parse_board("oo\noo")
        with pytest.raises(ValueError):
            cone.decompose_double_point(b, (0, 0))


class TestBasisAndProbes:
    def test_move_basis_spans(self, box34):
        basis = cone.move_basis(box34)
        mat = cone.move_matrix(box34)
        full = fraction_rank(mat)
        cols = [[mat[i][j] for j in basis] for i in range(len(box34))]
        assert fraction_rank(cols) == len(basis) == full

    def test_probes_run_and_sample(self, box34):
        report = cone.conjecture_probes(box34, samples=20, seed=0)
        assert report["double_in_integer_cone"]["tested"] > 0
        assert report["double_point_in_basis_span"]["tested"] == len(box34)
        assert report["double_in_integer_cone"]["violations"] == 0
        assert report["double_point_in_basis_span"]["violations"] == 0

    def test_probes_reject_isolated_board(self):
        with pytest.raises(ValueError):
            cone.conjecture_probes(parse_board("oo\noo"))
