"""Exact branch-and-bound integer feasibility over the rational LP kernel."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from gmpy2 import mpq

from .exact import LinearSystem, lp_solve, verify_farkas, check_point

INTEGRAL = "integral"
INFEASIBLE = "infeasible"
BUDGET = "budget"
CANCELLED = "cancelled"

DEFAULT_NODE_BUDGET = 10**6


@dataclass
class MilpInstance:
    system: LinearSystem
    integral: list[bool]
    objective: list
    node_budget: int = DEFAULT_NODE_BUDGET
    # Called once per node; return False to cancel cooperatively.
    on_node: Callable[[int], bool] | None = None


@dataclass
class BnbResult:
    status: str
    point: list | None = None
    value: object = None
    transcript: dict | None = None
    nodes: int = 0


def _floor(q) -> int:
    return q.numerator // q.denominator


def _is_integral(point: Sequence, flags: Sequence[bool]) -> bool:
    return all((not f) or q.denominator == 1 for q, f in zip(point, flags))


def _bounded_system(base: LinearSystem, bounds: list[tuple[int, str, int]]) -> LinearSystem:
    lower = list(base.lower)
    upper = list(base.upper)
    for col, rel, val in bounds:
        v = mpq(val)
        if rel == "<=":
            upper[col] = v if upper[col] is None else min(upper[col], v)
        else:
            lower[col] = v if lower[col] is None else max(lower[col], v)
    return LinearSystem(a=base.a, b=base.b, relations=base.relations,
                        lower=lower, upper=upper)


def solve_milp(inst: MilpInstance) -> BnbResult:
    """Depth-first branch and bound; branches on the most fractional integer
    column (ties to the lowest index), floor side explored first.

    Returns an integral point, an infeasibility transcript whose leaves carry
    replayable Farkas certificates, or a budget/cancel status.
    """
    base = inst.system
    root: dict = {}
    # Stack entries: (bounds, tree-slot dict to fill in).
    stack: list[tuple[list, dict]] = [([], root)]
    nodes = 0
    while stack:
        bounds, slot = stack.pop()
        nodes += 1
        if nodes > inst.node_budget:
            return BnbResult(BUDGET, nodes=nodes - 1)
        if inst.on_node is not None and not inst.on_node(nodes):
            return BnbResult(CANCELLED, nodes=nodes)
        sysn = _bounded_system(base, bounds)
        out = lp_solve(sysn, inst.objective, "min")
        if out.status == "infeasible":
            slot["leaf"] = {"farkas": [str(v) for v in out.farkas]}
            continue
        if out.status == "unbounded":
            # Feasibility instances here are always bounded; treat as an error.
            raise ValueError("unbounded LP relaxation in branch and bound")
        point = out.point
        if _is_integral(point, inst.integral):
            return BnbResult(
                INTEGRAL,
                point=[mpq(v) for v in point],
                value=out.value,
                nodes=nodes,
            )
        # Most fractional integral column; ties broken by lowest index.
        best_j = -1
        best_frac = mpq(0)
        for j, (q, f) in enumerate(zip(point, inst.integral)):
            if not f or q.denominator == 1:
                continue
            fr = q - _floor(q)
            score = min(fr, 1 - fr)
            if score > best_frac:
                best_frac = score
                best_j = j
        fl = int(_floor(point[best_j]))
        slot["branch"] = [best_j, fl]
        slot["lo"] = {}
        slot["hi"] = {}
        # LIFO: push ceil first so the floor child is explored first.
        stack.append((bounds + [(best_j, ">=", fl + 1)], slot["hi"]))
        stack.append((bounds + [(best_j, "<=", fl)], slot["lo"]))
    return BnbResult(
        INFEASIBLE,
        transcript={"type": "bnb_transcript", "nodes": nodes, "tree": root},
        nodes=nodes,
    )


def replay_transcript(system: LinearSystem, objective: list, transcript: dict) -> bool:
    """Re-verify an infeasibility transcript: every leaf Farkas certificate
    holds on its bounded system and every branch pair covers its parent."""
    if transcript.get("type") != "bnb_transcript":
        return False

    def walk(node: dict, bounds: list) -> bool:
        if "leaf" in node:
            sysn = _bounded_system(system, bounds)
            y = [mpq(v) for v in node["leaf"]["farkas"]]
            return verify_farkas(sysn, objective, y)
        if "branch" not in node:
            return False
        col, fl = node["branch"]
        lo, hi = node.get("lo"), node.get("hi")
        if lo is None or hi is None:
            return False
        return (walk(lo, bounds + [(col, "<=", fl)])
                and walk(hi, bounds + [(col, ">=", fl + 1)]))

    return walk(transcript["tree"], [])


def verify_integral_point(system: LinearSystem, integral: list[bool],
                          point: Sequence) -> bool:
    """Exact substitution check plus integrality flags."""
    pt = [mpq(v) for v in point]
    return _is_integral(pt, integral) and check_point(system, pt)
