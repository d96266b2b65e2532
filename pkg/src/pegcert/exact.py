"""Exact rational linear algebra: rank, Hermite normal form, and a simplex
LP kernel producing Farkas infeasibility certificates.

Rationals are gmpy2.mpq throughout (exact, fast); certificates serialize as
"p/q" strings.  The solver is a dense two-phase tableau simplex with Bland's
anti-cycling rule, so identical inputs yield identical pivots and outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def rat(x) -> mpq:
    """Coerce ints, strings like "p/q" and Fractions to mpq."""
    return mpq(x)


def rat_str(q) -> str:
    return str(mpq(q))


# ---------------------------------------------------------------------------
# Linear systems

EQ, LE, GE = "=", "<=", ">="


@dataclass
class LinearSystem:
    """A b-relations system with per-column bounds (None = unbounded)."""

    a: list[list]                       # m rows of n rational coefficients
    b: list                             # m rationals
    relations: list[str]                # '=', '<=' or '>=' per row
    lower: list = None                  # per column; default all 0
    upper: list = None                  # per column; default all None

    def __post_init__(self):
        n = self.n_cols
        self.a = [[mpq(v) for v in row] for row in self.a]
        self.b = [mpq(v) for v in self.b]
        if self.lower is None:
            self.lower = [ZERO] * n
        else:
            self.lower = [None if v is None else mpq(v) for v in self.lower]
        if self.upper is None:
            self.upper = [None] * n
        else:
            self.upper = [None if v is None else mpq(v) for v in self.upper]
        if not (len(self.b) == len(self.relations) == len(self.a)):
            raise ValueError("inconsistent row dimensions")
        if any(len(row) != n for row in self.a):
            raise ValueError("ragged matrix")
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("inconsistent bound dimensions")

    @property
    def n_rows(self) -> int:
        return len(self.a)

    @property
    def n_cols(self) -> int:
        return len(self.a[0]) if self.a else (len(self.lower) if self.lower else 0)


@dataclass
class LpOutcome:
    status: str                          # 'feasible' | 'infeasible' | 'unbounded'
    point: list | None = None            # rational vector, original columns
    value: object = None                 # rational optimum
    farkas: list | None = None           # multipliers over standardized rows


# ---------------------------------------------------------------------------
# Standard form

@dataclass
class _Standardized:
    """A x = b with x >= 0, b >= 0, plus the bookkeeping to map back."""

    cols: list[list]        # column-major matrix entries
    b: list
    obj: list               # cost per standard column
    obj_const: object
    row_sign: list          # +1 / -1 per standard row vs pre-negation row
    n_sys_rows: int         # rows coming from the input system (before bound rows)
    col_map: list           # per original column: ("shift", j_std, l) |
                            #   ("mirror", j_std, u) | ("split", j_pos, j_neg)


def standardize(sys: LinearSystem, objective: Sequence, sense: str = "min") -> _Standardized:
    """Deterministic reduction to standard form.

    Rows: input rows in order (slack/surplus appended per row), then one
    '<=' bound row per column having both bounds finite, in column order.
    """
    n = sys.n_cols
    obj = [mpq(c) for c in objective]
    if sense == "max":
        obj = [-c for c in obj]
    elif sense != "min":
        raise ValueError(f"unknown sense {sense!r}")

    rows = [list(r) for r in sys.a]
    b = list(sys.b)
    rels = list(sys.relations)
    # Extra rows for two-sided bounds (in terms of the shifted variable).
    bound_rows = []
    col_map = []
    std_cols_of = []         # per original column: list of (std_col, sign)
    n_std = 0
    for j in range(n):
        l, u = sys.lower[j], sys.upper[j]
        if l is not None:
            col_map.append(("shift", n_std, l))
            std_cols_of.append([(n_std, ONE)])
            n_std += 1
            if u is not None:
                bound_rows.append((j, u - l))
        elif u is not None:
            col_map.append(("mirror", n_std, u))
            std_cols_of.append([(n_std, -ONE)])
            n_std += 1
        else:
            col_map.append(("split", n_std, n_std + 1))
            std_cols_of.append([(n_std, ONE), (n_std + 1, -ONE)])
            n_std += 2

    m_sys = len(rows)
    all_rows = []
    all_b = []
    all_rels = []
    for i in range(m_sys):
        all_rows.append(rows[i])
        all_b.append(b[i])
        all_rels.append(rels[i])
    for j, cap in bound_rows:
        r = [ZERO] * n
        r[j] = ONE          # in original terms x_j <= l_j + cap
        all_rows.append(r)
        all_b.append(sys.lower[j] + cap)
        all_rels.append(LE)

    m = len(all_rows)
    # Build standard columns from original ones (apply shifts to rhs).
    cols = [[ZERO] * m for _ in range(n_std)]
    std_obj = [ZERO] * n_std
    obj_const = ZERO
    bb = list(all_b)
    for j in range(n):
        kind = col_map[j][0]
        if kind == "shift":
            _, js, l = col_map[j]
            for i in range(m):
                v = all_rows[i][j]
                if v:
                    cols[js][i] = v
                    bb[i] -= v * l
            std_obj[js] = obj[j]
            obj_const += obj[j] * l
        elif kind == "mirror":
            _, js, u = col_map[j]
            for i in range(m):
                v = all_rows[i][j]
                if v:
                    cols[js][i] = -v
                    bb[i] -= v * u
            std_obj[js] = -obj[j]
            obj_const += obj[j] * u
        else:
            _, jp, jn = col_map[j]
            for i in range(m):
                v = all_rows[i][j]
                if v:
                    cols[jp][i] = v
                    cols[jn][i] = -v
            std_obj[jp] = obj[j]
            std_obj[jn] = -obj[j]

    # Slack / surplus columns.
    for i in range(m):
        if all_rels[i] == LE:
            col = [ZERO] * m
            col[i] = ONE
            cols.append(col)
            std_obj.append(ZERO)
        elif all_rels[i] == GE:
            col = [ZERO] * m
            col[i] = -ONE
            cols.append(col)
            std_obj.append(ZERO)
        elif all_rels[i] != EQ:
            raise ValueError(f"unknown relation {all_rels[i]!r}")

    # Make rhs non-negative.
    row_sign = [1] * m
    for i in range(m):
        if bb[i] < 0:
            row_sign[i] = -1
            bb[i] = -bb[i]
            for col in cols:
                if col[i]:
                    col[i] = -col[i]

    return _Standardized(cols, bb, std_obj, obj_const, row_sign, m_sys, col_map)


# ---------------------------------------------------------------------------
# Simplex

def _pivot(tab: list[list], basis: list[int], pr: int, pc: int) -> None:
    prow = tab[pr]
    piv = prow[pc]
    if piv != 1:
        inv = 1 / piv
        for j, v in enumerate(prow):
            if v:
                prow[j] = v * inv
    # Only columns where the pivot row is non-zero can change.
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i == pr:
            continue
        f = row[pc]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    basis[pr] = pc


def _bland_min(tab: list[list], basis: list[int], allowed: int) -> str:
    """Minimize with cost row last; returns 'optimal' or 'unbounded'."""
    m = len(tab) - 1
    while True:
        cost = tab[-1]
        pc = -1
        for j in range(allowed):
            if cost[j] < 0:
                pc = j
                break
        if pc < 0:
            return "optimal"
        pr = -1
        best = None
        for i in range(m):
            a = tab[i][pc]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr < 0:
            return "unbounded"
        _pivot(tab, basis, pr, pc)


def lp_solve(sys: LinearSystem, objective: Sequence, sense: str = "min") -> LpOutcome:
    """Exact optimum, unboundedness, or infeasibility with a Farkas vector.

    The Farkas vector is indexed by standardized rows (input rows first, then
    deterministic bound rows); see verify_farkas.
    """
    std = standardize(sys, objective, sense)
    m = len(std.b)
    n_std = len(std.cols)

    # Phase 1 tableau: [cols | artificials | rhs], cost = sum of artificials.
    tab = []
    for i in range(m):
        row = [std.cols[j][i] for j in range(n_std)]
        row += [ONE if k == i else ZERO for k in range(m)]
        row.append(std.b[i])
        tab.append(row)
    cost = [ZERO] * (n_std + m) + [ZERO]
    for k in range(m):
        cost[n_std + k] = ONE
    tab.append(cost)
    basis = [n_std + i for i in range(m)]
    # Price out the initial basis.
    for i in range(m):
        tab[-1] = [a - b for a, b in zip(tab[-1], tab[i])]

    _bland_min(tab, basis, n_std)
    phase1 = -tab[-1][-1]
    if phase1 > 0:
        # y_i = 1 - reduced cost of artificial i, flipped back to input rows.
        y = []
        for i in range(m):
            red = tab[-1][n_std + i]
            y.append((ONE - red) * std.row_sign[i])
        return LpOutcome("infeasible", farkas=y)

    # Drive artificials out of the basis where possible; drop dead rows.
    for i in range(m):
        if basis[i] >= n_std:
            pc = next((j for j in range(n_std) if tab[i][j] != 0), None)
            if pc is not None:
                _pivot(tab, basis, i, pc)

    # Phase 2: real objective over non-artificial columns.
    cost = [ZERO] * (n_std + m) + [ZERO]
    for j in range(n_std):
        cost[j] = std.obj[j]
    tab[-1] = cost
    for i in range(m):
        bj = basis[i]
        f = tab[-1][bj]
        if f:
            tab[-1] = [a - f * b for a, b in zip(tab[-1], tab[i])]
    # Residual basic artificials sit at level 0; forbid them from re-entering
    # by restricting the entering scan to the first n_std columns.
    status = _bland_min(tab, basis, n_std)
    if status == "unbounded":
        return LpOutcome("unbounded")

    x_std = [ZERO] * n_std
    for i in range(m):
        if basis[i] < n_std:
            x_std[basis[i]] = tab[i][-1]
    point = []
    for entry in std.col_map:
        if entry[0] == "shift":
            point.append(entry[2] + x_std[entry[1]])
        elif entry[0] == "mirror":
            point.append(entry[2] - x_std[entry[1]])
        else:
            point.append(x_std[entry[1]] - x_std[entry[2]])
    value = std.obj_const + sum(
        (std.obj[j] * x_std[j] for j in range(n_std)), ZERO)
    if sense == "max":
        value = -value
    return LpOutcome("feasible", point=point, value=value)


def verify_farkas(sys: LinearSystem, objective: Sequence, y: Sequence) -> bool:
    """Exact check that y certifies infeasibility of the standardized system:
    y^T A <= 0 componentwise (with slack sign conditions) and y^T b > 0."""
    std = standardize(sys, objective, "min")
    m = len(std.b)
    y = [mpq(v) for v in y]
    if len(y) != m:
        return False
    ys = [y[i] * std.row_sign[i] for i in range(m)]
    n_std = len(std.cols)
    for j in range(n_std):
        col = std.cols[j]
        s = sum((ys[i] * col[i] for i in range(m) if col[i]), ZERO)
        if s > 0:
            return False
    rhs = sum((ys[i] * std.b[i] for i in range(m)), ZERO)
    return rhs > 0


def check_point(sys: LinearSystem, point: Sequence) -> bool:
    """Exact feasibility of a point for the original system."""
    x = [mpq(v) for v in point]
    if len(x) != sys.n_cols:
        return False
    for j in range(sys.n_cols):
        if sys.lower[j] is not None and x[j] < sys.lower[j]:
            return False
        if sys.upper[j] is not None and x[j] > sys.upper[j]:
            return False
    for row, rel, rhs in zip(sys.a, sys.relations, sys.b):
        v = sum((row[j] * x[j] for j in range(len(x)) if row[j]), ZERO)
        if rel == EQ and v != rhs:
            return False
        if rel == LE and v > rhs:
            return False
        if rel == GE and v < rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Rational rank

def rank_rational(a: list[list]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    if not a:
        return 0
    work = [[mpq(v) for v in row] for row in a]
    n = len(work[0])
    rank = 0
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        prow = work[row]
        inv = 1 / prow[col]
        work[row] = prow = [v * inv for v in prow]
        for i in range(len(work)):
            if i != row and work[i][col]:
                f = work[i][col]
                work[i] = [a2 - f * b2 for a2, b2 in zip(work[i], prow)]
        rank += 1
        row += 1
        if row == len(work):
            break
    return rank


# ---------------------------------------------------------------------------
# Hermite normal form (column operations) and lattice membership

class NoIntegerSolution(Exception):
    """b is not in the column lattice of A; carries a re-checkable proof."""

    def __init__(self, proof: dict):
        super().__init__("no integer solution")
        self.proof = proof


def hnf(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form: returns (H, U) with A·U = H,
    U unimodular, H in column echelon form with positive pivots."""
    m = len(a)
    n = len(a[0]) if m else 0
    # Work column-major.
    H = [[a[i][j] for i in range(m)] for j in range(n)]
    U = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    k = 0  # next pivot column slot
    for r in range(m):
        # Reduce entries of row r across columns k..n-1 to a single gcd pivot.
        live = [j for j in range(k, n) if H[j][r]]
        if not live:
            continue
        while True:
            live = [j for j in range(k, n) if H[j][r]]
            if len(live) <= 1:
                break
            live.sort(key=lambda j: abs(H[j][r]))
            piv = live[0]
            for j in live[1:]:
                q = H[j][r] // H[piv][r]
                if q:
                    H[j] = [x - q * y for x, y in zip(H[j], H[piv])]
                    U[j] = [x - q * y for x, y in zip(U[j], U[piv])]
        j = next(j for j in range(k, n) if H[j][r])
        H[k], H[j] = H[j], H[k]
        U[k], U[j] = U[j], U[k]
        if H[k][r] < 0:
            H[k] = [-x for x in H[k]]
            U[k] = [-x for x in U[k]]
        # Reduce earlier columns' row-r entries modulo the pivot.
        p = H[k][r]
        for j in range(k):
            q = H[j][r] // p
            if q:
                H[j] = [x - q * y for x, y in zip(H[j], H[k])]
                U[j] = [x - q * y for x, y in zip(U[j], U[k])]
        k += 1
        if k == n:
            break
    Hrows = [[H[j][i] for j in range(n)] for i in range(m)]
    Urows = [[U[j][i] for j in range(n)] for i in range(n)]
    return Hrows, Urows


def hnf_solve(H: list[list[int]], U: list[list[int]], b: list[int]) -> list[int]:
    """Solve H z = b over the integers using the echelon structure,
    then return x = U z.  Raises NoIntegerSolution with a proof on failure."""
    m = len(H)
    n = len(H[0]) if m else 0
    pivots = []  # (row, col)
    col = 0
    for j in range(n):
        r = next((i for i in range(m) if H[i][j]), None)
        if r is None:
            break
        pivots.append((r, j))
    z = [0] * n
    done_rows = set()
    for r, j in pivots:
        resid = b[r] - sum(H[r][jj] * z[jj] for jj in range(j))
        if resid % H[r][j]:
            raise NoIntegerSolution({
                "type": "hnf_proof", "row": r, "col": j,
                "pivot": H[r][j], "residual": resid,
            })
        z[j] = resid // H[r][j]
        done_rows.add(r)
    for r in range(m):
        resid = b[r] - sum(H[r][j] * z[j] for j in range(n) if H[r][j])
        if resid:
            raise NoIntegerSolution({
                "type": "hnf_proof", "row": r, "col": None,
                "pivot": None, "residual": resid,
            })
    x = [sum(U[i][j] * z[j] for j in range(n) if z[j]) for i in range(n)]
    return x


def hermite_solve(a: list[list[int]], b: list[int]):
    """Integer x with A x = b, or raises NoIntegerSolution."""
    H, U = hnf(a)
    return hnf_solve(H, U, b)


def det_int(a: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


# ---------------------------------------------------------------------------
# Plain-text LP interchange export (cross-check only, never certificate source)

def export_lp(sys: LinearSystem, objective: Sequence, sense: str = "min",
              integral: Sequence[bool] | None = None) -> str:
    """Line-oriented export: objective, rows, bounds, integer markers.

    objective: "min|max c0 c1 ...", rows: "rel rhs a0 a1 ...", bounds:
    "bounds l0|* u0|* ...", integers: "integers j1 j2 ...".  Rationals are
    written as "p/q".
    """
    lines = [f"{sense} " + " ".join(rat_str(c) for c in objective)]
    for row, rel, rhs in zip(sys.a, sys.relations, sys.b):
        lines.append(f"{rel} {rat_str(rhs)} " + " ".join(rat_str(v) for v in row))
    lo = " ".join("*" if v is None else rat_str(v) for v in sys.lower)
    up = " ".join("*" if v is None else rat_str(v) for v in sys.upper)
    lines.append(f"lower {lo}")
    lines.append(f"upper {up}")
    if integral is not None:
        lines.append("integers " + " ".join(str(j) for j, f in enumerate(integral) if f))
    return "\n".join(lines) + "\n"
