"""Move-graph distances, bounded exhaustive search, depth and height lower
bounds, infinite-height certification, and move thickness bounds."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import isqrt

from .board import Board, Cell, Move, Position, apply_move, legal_moves
from .problem import Problem
from .cone import ResourceCount, nonneg_integer_test, verify_pagoda
from .exact import LinearSystem, lp_solve

INFINITY = math.inf

DEFAULT_HORIZON = 5

# Any move on any board can appear at most this many times in a non-negative
# integer writing of a 0/±1 target: the golden-ratio pagoda centered at the
# move gives <pi, h> <= 8*rho + 13 = 17.94..., independent of the board.
UNIVERSAL_THICKNESS = 17


class MoveGraph:
    """Directed graph on cells: an edge a -> b whenever some move consumes a
    peg at a (a is an extremity or the jumped peg) and creates one at b."""

    def __init__(self, board: Board):
        self.board = board
        succ: dict[Cell, set[Cell]] = {c: set() for c in board.cells}
        pred: dict[Cell, set[Cell]] = {c: set() for c in board.cells}
        for m in board.moves:
            for a in (m.p, m.q):
                succ[a].add(m.r)
                pred[m.r].add(a)
        self.succ = succ
        self.pred = pred


@lru_cache(maxsize=256)
def move_graph(board: Board) -> MoveGraph:
    return MoveGraph(board)


def _bfs(adj: dict[Cell, set[Cell]], source: Cell) -> dict[Cell, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for nxt in adj[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def graph_distance(board: Board, a: Cell, target: set[Cell],
                   reverse: bool = False):
    """Shortest-path length from a to any target cell in the move graph
    (unit weights, so breadth-first search suffices); with reverse, paths
    are followed against the edges, giving distances *into* a."""
    g = move_graph(board)
    dist = _bfs(g.pred if reverse else g.succ, a)
    best = min((dist[t] for t in target if t in dist), default=INFINITY)
    return best


@dataclass
class ReachFrontier:
    """Cells whose exact depth or height is at most the search horizon."""

    mode: str
    horizon: int
    exact: dict[Cell, int]

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.exact


def bounded_search(board: Board, start: Position, k: int = DEFAULT_HORIZON,
                   mode: str = "depth",
                   query: set[Cell] | None = None) -> ReachFrontier:
    """Exhaustive enumeration of all positions within k moves of start, with
    transposition deduplication on the position bitmask.

    Depth mode records, per cell of start, the fewest moves after which its
    peg is gone; height mode records the fewest moves placing a peg on a
    cell.  Cells absent from the result have value > k within the horizon.
    """
    if mode not in ("depth", "height"):
        raise ValueError(f"unknown mode {mode!r}")
    start_mask = board.mask(start)
    if mode == "depth":
        watch = {i for i in range(len(board)) if (start_mask >> i) & 1}
    else:
        watch = set(range(len(board)))
    if query is not None:
        watch &= {board.cell_index[c] for c in query}

    def hits(mask: int) -> list[int]:
        if mode == "depth":
            return [i for i in watch if not (mask >> i) & 1]
        return [i for i in watch if (mask >> i) & 1]

    exact: dict[Cell, int] = {}
    for i in hits(start_mask):
        exact[board.cells[i]] = 0
        watch.discard(i)
    move_masks = board.move_masks()
    seen = {start_mask}
    level = [start_mask]
    for step in range(1, k + 1):
        if not watch:
            break
        nxt = []
        for mask in level:
            for pq, r, _ in move_masks:
                if mask & pq == pq and not mask & r:
                    new = (mask & ~pq) | r
                    if new in seen:
                        continue
                    seen.add(new)
                    nxt.append(new)
                    for i in hits(new):
                        exact[board.cells[i]] = step
                        watch.discard(i)
        if not nxt:
            break
        level = nxt
    return ReachFrontier(mode, k, exact)


def depth_lower_bound(board: Board, a: Cell, base: Position,
                      bounds: ReachFrontier):
    """Lower bound on the fewest moves removing the peg at a, starting from
    base; exact when a is inside the search frontier."""
    if a not in base:
        return 0
    if a in bounds.exact:
        return bounds.exact[a]
    g = move_graph(board)
    dist = _bfs(g.succ, a)
    best = min((dist[b] + v for b, v in bounds.exact.items() if b in dist),
               default=INFINITY)
    if math.isinf(best):
        return INFINITY
    return max(bounds.horizon + 1, best)


def height_lower_bound(board: Board, a: Cell, base: Position,
                       bounds: ReachFrontier):
    """Lower bound on the fewest moves placing a peg on a, starting from
    base; exact when a is inside the search frontier."""
    if a in base:
        return 0
    if a in bounds.exact:
        return bounds.exact[a]
    # A peg reaches a along edges into a, hence the reversed graph.
    g = move_graph(board)
    dist = _bfs(g.pred, a)
    best = min((dist[b] + v for b, v in bounds.exact.items() if b in dist),
               default=INFINITY)
    if math.isinf(best):
        return INFINITY
    return max(bounds.horizon + 1, best)


def _separating_pagoda(board: Board, pegs: frozenset,
                       targets: tuple[Cell, ...]) -> ResourceCount | None:
    """Non-negative pagoda with <1_pegs, pi> < sum of pi over targets, found
    by LP with the target sum normalized to 1; None when no such pi exists."""
    n = len(board)
    idx = board.cell_index
    a_rows, rels, b = [], [], []
    for m in board.moves:
        row = [0] * n
        row[idx[m.p]] += 1
        row[idx[m.q]] += 1
        row[idx[m.r]] -= 1
        a_rows.append(row)
        rels.append(">=")
        b.append(0)
    norm = [0] * n
    for t in targets:
        norm[idx[t]] += 1
    a_rows.append(norm)
    rels.append("=")
    b.append(1)
    obj = [0] * n
    for c in pegs:
        obj[idx[c]] = 1
    out = lp_solve(LinearSystem(a=a_rows, b=b, relations=rels), obj, "min")
    if out.status != "feasible" or out.value >= 1:
        return None
    pi = ResourceCount(tuple(
        (c, out.point[i]) for i, c in enumerate(board.cells)))
    assert verify_pagoda(board, pi)
    assert sum(out.point[idx[c]] for c in pegs) < 1
    return pi


def _certify_infinite(board: Board, pegs: frozenset,
                      targets: tuple[Cell, ...], derive: int) -> bool:
    """True when no play from pegs can ever cover every target cell at once:
    either a separating pagoda exists, or every one-move successor certifies
    recursively (a stuck position with a target missing certifies trivially)."""
    if all(t in pegs for t in targets):
        return False
    if _separating_pagoda(board, pegs, targets) is not None:
        return True
    if derive <= 0:
        return False
    pos = Position(pegs)
    return all(
        _certify_infinite(board, apply_move(pos, m).pegs, targets, derive - 1)
        for m in legal_moves(board, pos))


def infinite_height_single(board: Board, start: Position, a: Cell,
                           derive: int = 1) -> bool:
    """Certify that no play from start ever places a peg on a."""
    return _certify_infinite(board, start.pegs, (a,), derive)


@dataclass(frozen=True)
class PairCertificate:
    a: Cell
    a_prime: Cell
    # Direct pagoda certificate when the start position separates; None when
    # the pair is certified through successor derivation only.
    pagoda: ResourceCount | None
    derive: int

    def cells(self) -> frozenset[Cell]:
        return frozenset((self.a, self.a_prime))


@dataclass
class PairCertificates:
    pairs: list[PairCertificate]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        key = frozenset(pair)
        return any(p.cells() == key for p in self.pairs)


def _covered_pairs(board: Board, start: Position, k: int,
                   position_cap: int = 20_000) -> set[frozenset[Cell]]:
    """Cell pairs jointly pegged by some position within k moves of start;
    such pairs have finite joint height, no certificate can exist."""
    move_masks = board.move_masks()
    seen = {board.mask(start)}
    level = list(seen)
    covered: set[frozenset[Cell]] = set()

    def record(mask: int) -> None:
        on = [c for i, c in enumerate(board.cells) if (mask >> i) & 1]
        for i, a in enumerate(on):
            for b in on[i + 1:]:
                covered.add(frozenset((a, b)))

    record(next(iter(seen)))
    for _ in range(k):
        nxt = []
        for mask in level:
            for pq, r, _ in move_masks:
                if mask & pq == pq and not mask & r:
                    new = (mask & ~pq) | r
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
                        record(new)
        if not nxt or len(seen) > position_cap:
            break
        level = nxt
    return covered


def infinite_height_pairs(board: Board, start: Position,
                          derive: int = 1) -> PairCertificates:
    """All unordered cell pairs certified never simultaneously covered by any
    play from start; pairs meeting start are excluded outright."""
    out = []
    cells = board.cells
    covered = _covered_pairs(board, start, DEFAULT_HORIZON)
    for i in range(len(cells)):
        if cells[i] in start:
            continue
        for j in range(i + 1, len(cells)):
            if cells[j] in start:
                continue
            pair = (cells[i], cells[j])
            if frozenset(pair) in covered:
                continue
            pi = _separating_pagoda(board, start.pegs, pair)
            if pi is not None:
                out.append(PairCertificate(pair[0], pair[1], pi, 0))
            elif derive > 0 and _certify_infinite(board, start.pegs, pair,
                                                  derive):
                out.append(PairCertificate(pair[0], pair[1], None, derive))
    return PairCertificates(out)


@dataclass(frozen=True)
class Zrho:
    """u + v*rho with rho = (sqrt(5) - 1) / 2, the positive root of
    x^2 + x = 1; all comparisons resolved by exact integer arithmetic."""

    u: int
    v: int

    def __add__(self, other):
        other = _as_zrho(other)
        return Zrho(self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        return Zrho(-self.u, -self.v)

    def __sub__(self, other):
        return self + (-_as_zrho(other))

    def __rsub__(self, other):
        return _as_zrho(other) + (-self)

    def __mul__(self, other):
        other = _as_zrho(other)
        # (u1 + v1 r)(u2 + v2 r) with r^2 = 1 - r.
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        return Zrho(u1 * u2 + v1 * v2, u1 * v2 + u2 * v1 - v1 * v2)

    __rmul__ = __mul__

    def sign(self) -> int:
        # 2(u + v r) = (2u - v) + v sqrt(5).
        a, b = 2 * self.u - self.v, self.v
        if a >= 0 and b >= 0:
            return 1 if (a or b) else 0
        if a <= 0 and b <= 0:
            return -1
        # Opposite signs; 5 b^2 is never a perfect square for b != 0.
        if a > 0:
            return 1 if a * a > 5 * b * b else -1
        return 1 if 5 * b * b > a * a else -1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __floor__(self) -> int:
        a, b = 2 * self.u - self.v, self.v
        if b >= 0:
            fs = int(isqrt(5 * b * b))
        else:
            fs = -int(isqrt(5 * b * b)) - 1
        n = (a + fs) // 2
        while (self - (n + 1)).sign() >= 0:
            n += 1
        while (self - n).sign() < 0:
            n -= 1
        return n

    def __str__(self) -> str:
        return f"{self.u}+{self.v}r"


def _as_zrho(x) -> Zrho:
    if isinstance(x, Zrho):
        return x
    if isinstance(x, int):
        return Zrho(x, 0)
    return NotImplemented


@lru_cache(maxsize=1024)
def rho_power(k: int) -> Zrho:
    """rho^k in Z[rho]; rho^(k+1) = b + (a - b) rho when rho^k = a + b rho."""
    if k == 0:
        return Zrho(1, 0)
    prev = rho_power(k - 1)
    return Zrho(prev.v, prev.u - prev.v)


def golden_pagoda(board: Board, m: Move) -> ResourceCount:
    """Pagoda rho^(|a - a0| + |b - b0|) centered at the move's middle cell,
    with exact golden-ratio values; its inner product with m is exactly 1."""
    r0, c0 = m.q
    values = tuple(
        (cell, rho_power(abs(cell[0] - r0) + abs(cell[1] - c0)))
        for cell in board.cells)
    pi = ResourceCount(values)
    v = pi.as_dict()
    total = v[m.p] + v[m.q] - v[m.r]
    assert total == Zrho(1, 0)
    return pi


def thickness_bound(board: Board, problem: Problem, m: Move,
                    refine: bool = False, node_budget: int | None = None) -> int:
    """Upper bound on how often m can appear in any non-negative integer
    writing of the problem's target vector.

    The golden-ratio pagoda gives floor(<pi, h>), capped by the universal
    bound; with refine, the bound is decremented while the residual target
    h - bound*m has no non-negative integer writing.
    """
    pi = golden_pagoda(board, m)
    v = pi.as_dict()
    h = problem.delta()
    score = Zrho(0, 0)
    for i, c in enumerate(board.cells):
        if h[i]:
            score = score + v[c] * h[i]
    bound = min(UNIVERSAL_THICKNESS, math.floor(score))
    bound = max(0, bound)
    if not refine:
        return bound
    kwargs = {"node_budget": node_budget} if node_budget is not None else {}
    while bound > 0:
        target = [h[i] - bound * m.coefficient(c)
                  for i, c in enumerate(board.cells)]
        verdict = nonneg_integer_test(board, target=target, **kwargs)
        if not verdict.failed:
            break
        bound -= 1
    return bound


def diagram_grid(board: Board, values: dict[Cell, object]) -> list[list]:
    """Board-shaped grid of integer values; None off the board, the string
    "inf" for infinite entries."""
    grid: list[list] = []
    for r in range(board.n_rows):
        row = []
        for c in range(board.n_cols):
            if (r, c) not in board.cell_index:
                row.append(None)
            else:
                v = values.get((r, c))
                if v is None:
                    row.append(None)
                elif isinstance(v, float) and math.isinf(v):
                    row.append("inf")
                else:
                    row.append(int(v))
        grid.append(row)
    return grid


def render_diagram(board: Board, values: dict[Cell, object]) -> str:
    """Text rendering of diagram_grid, columns padded to equal width."""
    grid = diagram_grid(board, values)
    cells = [["#" if (r, c) not in board.cell_index
              else "." if v is None else str(v)
              for c, v in enumerate(row)]
             for r, row in enumerate(grid)]
    width = max((len(s) for row in cells for s in row), default=1)
    return "\n".join(" ".join(s.rjust(width) for s in row) for row in cells)
