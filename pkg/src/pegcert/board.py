"""Board geometry, positions, move generation and the no-isolated-point predicate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Cell = tuple[int, int]

# Jump directions in canonical order: right, left, down, up.
_DIRECTIONS: tuple[tuple[int, int], ...] = ((0, 1), (0, -1), (1, 0), (-1, 0))

BOARD_ALPHABET = {"#", ".", "o"}


class BoardError(ValueError):
    """Malformed board description."""


class IllegalMoveError(ValueError):
    """Move not legal at the given position."""


@dataclass(frozen=True)
class Move:
    """Jump p over q landing on r; as a vector it is e_p + e_q - e_r."""

    p: Cell
    q: Cell
    r: Cell

    def reversed(self) -> "Move":
        return Move(self.r, self.q, self.p)

    def support(self) -> tuple[Cell, Cell, Cell]:
        return (self.p, self.q, self.r)

    def coefficient(self, cell: Cell) -> int:
        """Value of the move vector at cell (+1 on p and q, -1 on r, else 0)."""
        if cell == self.r:
            return -1
        if cell == self.p or cell == self.q:
            return 1
        return 0


@dataclass(frozen=True)
class Position:
    """A set of cells holding pegs."""

    pegs: frozenset[Cell]

    def __len__(self) -> int:
        return len(self.pegs)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.pegs


class Board:
    """Immutable board: ordered cells plus the fully enumerated move set.

    Cells are normalized so the bounding box's top-left corner is (0, 0),
    ordered row-major.  Moves are enumerated per cell in direction order
    right, left, down, up, so indices are stable across runs.
    """

    def __init__(self, cells: Iterable[Cell]):
        cellset = set(cells)
        if not cellset:
            raise BoardError("empty board")
        r0 = min(r for r, _ in cellset)
        c0 = min(c for _, c in cellset)
        norm = sorted((r - r0, c - c0) for r, c in cellset)
        if len(norm) != len(cellset):
            raise BoardError("duplicate cells")
        self.cells: tuple[Cell, ...] = tuple(norm)
        self.cell_index: dict[Cell, int] = {c: i for i, c in enumerate(self.cells)}
        moves = []
        for r, c in self.cells:
            for dr, dc in _DIRECTIONS:
                q = (r + dr, c + dc)
                t = (r + 2 * dr, c + 2 * dc)
                if q in self.cell_index and t in self.cell_index:
                    moves.append(Move((r, c), q, t))
        self.moves: tuple[Move, ...] = tuple(moves)
        self.move_index: dict[Move, int] = {m: i for i, m in enumerate(self.moves)}
        self.n_rows = 1 + max(r for r, _ in self.cells)
        self.n_cols = 1 + max(c for _, c in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Board) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"Board({len(self.cells)} cells, {len(self.moves)} moves)"

    def position(self, pegs: Iterable[Cell]) -> Position:
        pegset = frozenset(pegs)
        stray = pegset - set(self.cells)
        if stray:
            raise BoardError(f"pegs outside the board: {sorted(stray)}")
        return Position(pegset)

    def full(self) -> Position:
        return Position(frozenset(self.cells))

    def empty(self) -> Position:
        return Position(frozenset())

    # Bitmask helpers (bit i = cells[i]); used by search code.
    def mask(self, pos: Position) -> int:
        m = 0
        for cell in pos.pegs:
            m |= 1 << self.cell_index[cell]
        return m

    def unmask(self, mask: int) -> Position:
        return Position(frozenset(c for i, c in enumerate(self.cells) if (mask >> i) & 1))

    def move_masks(self) -> list[tuple[int, int, int]]:
        """Per move: (mask of {p,q}, mask of {r}, full support mask)."""
        out = []
        for m in self.moves:
            pq = (1 << self.cell_index[m.p]) | (1 << self.cell_index[m.q])
            r = 1 << self.cell_index[m.r]
            out.append((pq, r, pq | r))
        return out


def parse_board(text: str) -> Board:
    """Read a board from an ASCII grid ('#' off-board, '.' empty, 'o' peg)."""
    cells = []
    for r, line in enumerate(text.splitlines()):
        for c, ch in enumerate(line.rstrip("\n")):
            if ch not in BOARD_ALPHABET:
                raise BoardError(f"unexpected character {ch!r} at row {r}, col {c}")
            if ch in (".", "o"):
                cells.append((r, c))
    return Board(cells)


def parse_position(board: Board, text: str) -> Position:
    """Read a peg layout from a grid of the same shape as the board."""
    pegs = []
    shape = []
    for r, line in enumerate(text.splitlines()):
        for c, ch in enumerate(line.rstrip("\n")):
            if ch not in BOARD_ALPHABET:
                raise BoardError(f"unexpected character {ch!r} at row {r}, col {c}")
            if ch in (".", "o"):
                shape.append((r, c))
                if ch == "o":
                    pegs.append((r, c))
    if not shape:
        raise BoardError("empty grid")
    # Normalize to the bounding box origin, mirroring Board's convention.
    r0 = min(r for r, _ in shape)
    c0 = min(c for _, c in shape)
    if tuple(sorted((r - r0, c - c0) for r, c in shape)) != board.cells:
        raise BoardError("grid shape does not match the board")
    return board.position((r - r0, c - c0) for r, c in pegs)


def render_grid(board: Board, values: dict[Cell, str] | None = None,
                pegs: Position | None = None) -> str:
    """Render the board as a grid; values override the cell glyphs."""
    rows = []
    for r in range(board.n_rows):
        row = []
        for c in range(board.n_cols):
            if (r, c) not in board.cell_index:
                row.append("#")
            elif values is not None:
                row.append(values.get((r, c), "."))
            elif pegs is not None and (r, c) in pegs:
                row.append("o")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows)


_STANDARD_SHAPES = {
    "english": (7, 7, 2),   # 7x7 cross, 2x2 corners removed
    "wiegleb": (9, 9, 3),   # 9x9 cross, 3x3 corners removed
}


def standard_board(name: str) -> Board:
    """One of the classical boards: english (33), french (37), wiegleb (45)."""
    key = name.lower()
    if key == "french":
        base = standard_board("english")
        extra = [(1, 1), (1, 5), (5, 1), (5, 5)]
        return Board(list(base.cells) + extra)
    if key not in _STANDARD_SHAPES:
        raise BoardError(f"unknown board name {name!r}")
    n, _, k = _STANDARD_SHAPES[key]
    cells = [
        (r, c)
        for r in range(n)
        for c in range(n)
        if k <= r < n - k or k <= c < n - k
    ]
    return Board(cells)


def legal_moves(board: Board, pos: Position) -> list[Move]:
    pegs = pos.pegs
    return [m for m in board.moves if m.p in pegs and m.q in pegs and m.r not in pegs]


def apply_move(pos: Position, m: Move) -> Position:
    pegs = pos.pegs
    if m.p not in pegs or m.q not in pegs or m.r in pegs:
        raise IllegalMoveError(f"{m} is not legal here")
    return Position(pegs - {m.p, m.q} | {m.r})


def equivalence_classes(board: Board) -> list[frozenset[Cell]]:
    """Classes of the closure of 'P ~ R iff P, R are extremities of a move'."""
    parent = {c: c for c in board.cells}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in board.moves:
        a, b = find(m.p), find(m.r)
        if a != b:
            parent[a] = b
    groups: dict[Cell, set[Cell]] = {}
    for c in board.cells:
        groups.setdefault(find(c), set()).add(c)
    return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))


def has_no_isolated_point(board: Board) -> bool:
    """True iff every equivalence class contains the middle cell of some move."""
    middles = {m.q for m in board.moves}
    return all(cls & middles for cls in equivalence_classes(board))


def plays_to(board: Board, start: Position, moves: Iterable[Move]) -> Position:
    """Apply a sequence of moves, validating legality at each step."""
    pos = start
    for m in moves:
        pos = apply_move(pos, m)
    return pos


def _transforms(rows: int, cols: int) -> list:
    out = [lambda rc: rc,
           lambda rc: (rc[0], cols - 1 - rc[1]),
           lambda rc: (rows - 1 - rc[0], rc[1]),
           lambda rc: (rows - 1 - rc[0], cols - 1 - rc[1])]
    if rows == cols:
        out += [lambda rc: (rc[1], rc[0]),
                lambda rc: (rc[1], rows - 1 - rc[0]),
                lambda rc: (cols - 1 - rc[1], rc[0]),
                lambda rc: (cols - 1 - rc[1], rows - 1 - rc[0])]
    return out


def connected_subboards(rows: int, cols: int, min_cells: int = 1,
                        dedupe: bool = True) -> Iterator[Board]:
    """All connected sub-boards of a rows x cols box, optionally up to symmetry."""
    all_cells = [(r, c) for r in range(rows) for c in range(cols)]
    n = len(all_cells)
    index = {c: i for i, c in enumerate(all_cells)}
    adj = []
    for r, c in all_cells:
        nbrs = 0
        for dr, dc in _DIRECTIONS:
            if (r + dr, c + dc) in index:
                nbrs |= 1 << index[(r + dr, c + dc)]
        adj.append(nbrs)
    trans = _transforms(rows, cols)
    seen: set[tuple[Cell, ...]] = set()
    for mask in range(1, 1 << n):
        if bin(mask).count("1") < min_cells:
            continue
        # connectivity by flood fill over the mask
        start = mask & -mask
        comp = start
        frontier = start
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                grow |= adj[b.bit_length() - 1]
            frontier = grow & mask & ~comp
            comp |= frontier
        if comp != mask:
            continue
        cells = [all_cells[i] for i in range(n) if (mask >> i) & 1]
        if dedupe:
            keys = []
            for t in trans:
                tc = [t(c) for c in cells]
                r0 = min(r for r, _ in tc)
                c0 = min(c for _, c in tc)
                keys.append(tuple(sorted((r - r0, c - c0) for r, c in tc)))
            key = min(keys)
            if key in seen:
                continue
            seen.add(key)
        yield Board(cells)
