import random
from itertools import product

from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from pegcert.exact import LinearSystem, check_point
from pegcert.milp import (BUDGET, CANCELLED, INFEASIBLE, INTEGRAL,
                          MilpInstance, replay_transcript, solve_milp,
                          verify_integral_point)


def brute_integral_feasible(sys: LinearSystem, box: int = 8) -> bool:
    """Reference oracle: exhaustive scan of the integer box [0, box]^n
    (valid for systems whose solutions are certainly inside the box)."""
    n = sys.n_cols
    for combo in product(range(box + 1), repeat=n):
        if check_point(sys, list(combo)):
            return True
    return False


def random_instance(rng, m, n):
    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    rels = [rng.choice(["=", "<=", ">="]) for _ in range(m)]
    b = [rng.randint(-4, 6) for _ in range(m)]
    upper = [rng.randint(1, 5) for _ in range(n)]  # keeps the box bounded
    sys = LinearSystem(a=a, b=b, relations=rels, upper=upper)
    return MilpInstance(sys, [True] * n, [1] * n)


class TestSolve:
    def test_parity_infeasible(self):
        # 2x = 3 has no integer solution but a rational one.
        sys = LinearSystem(a=[[2]], b=[3], relations=["="])
        res = solve_milp(MilpInstance(sys, [True], [1]))
        assert res.status == INFEASIBLE
        assert replay_transcript(sys, [1], res.transcript)

    def test_integral_solution_found(self):
        sys = LinearSystem(a=[[2, 3]], b=[7], relations=["="])
        res = solve_milp(MilpInstance(sys, [True, True], [1, 1]))
        assert res.status == INTEGRAL
        assert verify_integral_point(sys, [True, True], res.point)

    def test_mixed_integrality(self):
        # x integer, y continuous: 2x + 2y = 3 feasible with y = 1/2.
        sys = LinearSystem(a=[[2, 2]], b=[3], relations=["="])
        res = solve_milp(MilpInstance(sys, [True, False], [1, 1]))
        assert res.status == INTEGRAL
        assert res.point[0].denominator == 1

    @given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, seed, m, n):
        rng = random.Random(seed)
        inst = random_instance(rng, m, n)
        res = solve_milp(inst)
        expected = brute_integral_feasible(inst.system)
        if res.status == INTEGRAL:
            assert expected
            assert verify_integral_point(inst.system, inst.integral, res.point)
        else:
            assert res.status == INFEASIBLE
            assert not expected
            assert replay_transcript(inst.system, inst.objective,
                                     res.transcript)

    def test_budget_exhaustion(self):
        sys = LinearSystem(a=[[2]], b=[3], relations=["="])
        inst = MilpInstance(sys, [True], [1], node_budget=0)
        assert solve_milp(inst).status == BUDGET

    def test_cooperative_cancel(self):
        sys = LinearSystem(a=[[2]], b=[3], relations=["="])
        inst = MilpInstance(sys, [True], [1], on_node=lambda n: False)
        assert solve_milp(inst).status == CANCELLED

    def test_on_node_sees_counts(self):
        counts = []
        sys = LinearSystem(a=[[2, 3]], b=[7], relations=["="])
        inst = MilpInstance(sys, [True, True], [1, 1],
                            on_node=lambda n: counts.append(n) or True)
        solve_milp(inst)
        assert counts == sorted(counts) and counts[0] == 1


class TestReplay:
    def test_replay_rejects_tampering(self):
        sys = LinearSystem(a=[[2]], b=[3], relations=["="])
        res = solve_milp(MilpInstance(sys, [True], [1]))
        t = res.transcript
        assert replay_transcript(sys, [1], t)
        # Wrong type tag.
        assert not replay_transcript(sys, [1], {**t, "type": "nope"})
        # Same transcript against a feasible system must not verify.
        feasible = LinearSystem(a=[[2]], b=[4], relations=["="])
        assert not replay_transcript(feasible, [1], t)

    def test_replay_rejects_missing_children(self):
        bad = {"type": "bnb_transcript", "tree": {"branch": [0, 0], "lo": {}}}
        sys = LinearSystem(a=[[2]], b=[3], relations=["="])
        assert not replay_transcript(sys, [1], bad)

    def test_verify_integral_point_rejects_fractions(self):
        sys = LinearSystem(a=[[2]], b=[1], relations=["="])
        assert not verify_integral_point(sys, [True], [mpq(1, 2)])
        assert verify_integral_point(sys, [False], [mpq(1, 2)])
