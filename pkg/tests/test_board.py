import random

import pytest
from hypothesis import given, settings, strategies as st

from pegcert.board import (Board, BoardError, IllegalMoveError, Move,
                           apply_move, connected_subboards,
                           equivalence_classes, has_no_isolated_point,
                           legal_moves, parse_board, parse_position,
                           plays_to, render_grid, standard_board)

from conftest import random_position


def brute_move_count(cells: set) -> int:
    """Reference move enumeration straight from the definition."""
    count = 0
    for (r, c) in cells:
        for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
            if (r + dr, c + dc) in cells and (r + 2 * dr, c + 2 * dc) in cells:
                count += 1
    return count


class TestBoardConstruction:
    def test_standard_sizes(self):
        assert len(standard_board("english")) == 33
        assert len(standard_board("french")) == 37
        assert len(standard_board("wiegleb")) == 45

    def test_move_counts_match_reference(self):
        for name in ("english", "french", "wiegleb"):
            b = standard_board(name)
            assert len(b.moves) == brute_move_count(set(b.cells))

    def test_cells_normalized_and_sorted(self):
        b = Board([(5, 7), (5, 8), (5, 9)])
        assert b.cells == ((0, 0), (0, 1), (0, 2))

    def test_empty_and_duplicate_rejected(self):
        with pytest.raises(BoardError):
            Board([])

    def test_unknown_standard_name(self):
        with pytest.raises(BoardError):
            standard_board("klingon")

    def test_move_indices_stable(self):
        a = parse_board("ooo\nooo")
        b = parse_board("ooo\nooo")
        assert a.moves == b.moves
        assert a == b and hash(a) == hash(b)


class TestParsing:
    def test_parse_render_round_trip(self):
        text = "##o##\nooooo\n##o##"
        b = parse_board(text)
        assert parse_board(render_grid(b)) == b
        assert render_grid(b) == text.replace("o", ".")

    def test_bad_character(self):
        with pytest.raises(BoardError):
            parse_board("oxo")

    def test_parse_position_shape_mismatch(self):
        b = parse_board("ooo\nooo")
        with pytest.raises(BoardError):
            parse_position(b, "oo\noo")

    def test_parse_position_pegs(self):
        b = parse_board("ooo")
        p = parse_position(b, "o.o")
        assert set(p.pegs) == {(0, 0), (0, 2)}

    def test_position_off_board_rejected(self):
        b = parse_board("ooo")
        with pytest.raises(BoardError):
            b.position([(5, 5)])


class TestMoves:
    def test_apply_move_semantics(self):
        b = parse_board("ooo")
        pos = b.position([(0, 0), (0, 1)])
        m = Move((0, 0), (0, 1), (0, 2))
        after = apply_move(pos, m)
        assert set(after.pegs) == {(0, 2)}

    def test_illegal_move_raises(self):
        b = parse_board("ooo")
        m = Move((0, 0), (0, 1), (0, 2))
        with pytest.raises(IllegalMoveError):
            apply_move(b.position([(0, 0)]), m)
        with pytest.raises(IllegalMoveError):
            apply_move(b.full(), m)

    def test_legal_moves_reference(self):
        rng = random.Random(3)
        b = parse_board("oooo\noooo\noooo")
        for _ in range(50):
            pos = random_position(b, rng)
            expected = {m for m in b.moves
                        if m.p in pos and m.q in pos and m.r not in pos}
            assert set(legal_moves(b, pos)) == expected

    def test_plays_to_validates(self):
        b = parse_board("oooo")
        m1 = Move((0, 0), (0, 1), (0, 2))
        pos = plays_to(b, b.position([(0, 0), (0, 1)]), [m1])
        assert set(pos.pegs) == {(0, 2)}
        with pytest.raises(IllegalMoveError):
            plays_to(b, b.position([(0, 0)]), [m1])

    @given(st.integers(min_value=0, max_value=10**6), st.integers(2, 4),
           st.integers(3, 5))
    @settings(max_examples=50, deadline=None)
    def test_apply_move_removes_one_peg(self, seed, rows, cols):
        rng = random.Random(seed)
        b = Board([(r, c) for r in range(rows) for c in range(cols)])
        pos = random_position(b, rng)
        for m in legal_moves(b, pos):
            after = apply_move(pos, m)
            assert len(after) == len(pos) - 1
            assert m.r in after and m.p not in after and m.q not in after

    def test_move_masks_consistent(self):
        b = parse_board("oooo\noooo")
        for m, (pq, r, sup) in zip(b.moves, b.move_masks()):
            assert pq == (1 << b.cell_index[m.p]) | (1 << b.cell_index[m.q])
            assert r == 1 << b.cell_index[m.r]
            assert sup == pq | r

    def test_mask_round_trip(self):
        rng = random.Random(9)
        b = standard_board("english")
        for _ in range(20):
            pos = random_position(b, rng)
            assert b.unmask(b.mask(pos)) == pos

    def test_reversed_move(self):
        m = Move((0, 0), (0, 1), (0, 2))
        assert m.reversed() == Move((0, 2), (0, 1), (0, 0))
        assert m.coefficient((0, 0)) == 1
        assert m.coefficient((0, 2)) == -1
        assert m.coefficient((5, 5)) == 0


class TestStructure:
    def test_equivalence_classes_partition(self):
        b = standard_board("english")
        classes = equivalence_classes(b)
        seen = set()
        for cls in classes:
            assert not cls & seen
            seen |= cls
        assert seen == set(b.cells)

    def test_no_isolated_point_examples(self):
        # A 1x2 strip has no moves at all: every class is move-free.
        assert not has_no_isolated_point(parse_board("oo"))
        # Standard boards all have the property.
        for name in ("english", "french", "wiegleb"):
            assert has_no_isolated_point(standard_board(name))

    def test_isolated_point_disconnected(self):
        # A 1x3 strip plus a far-away lone cell: the lone cell's class
        # contains no move middle.
        b = Board([(0, 0), (0, 1), (0, 2), (5, 5)])
        assert not has_no_isolated_point(b)

    def test_connected_subboards_all_connected(self):
        for b in connected_subboards(2, 3, dedupe=False):
            cells = set(b.cells)
            stack = [next(iter(cells))]
            seen = {stack[0]}
            while stack:
                r, c = stack.pop()
                for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
                    n = (r + dr, c + dc)
                    if n in cells and n not in seen:
                        seen.add(n)
                        stack.append(n)
            assert seen == cells

    def test_connected_subboards_count_small(self):
        # Reference count by brute force without symmetry reduction.
        boards = list(connected_subboards(2, 2, dedupe=False))
        # 4 singles + 4 dominoes + 4 L-triominoes + 1 square = 13.
        assert len(boards) == 13
        deduped = list(connected_subboards(2, 2, dedupe=True))
        # 1 single + 1 domino + 1 L + 1 square = 4 up to symmetry.
        assert len(deduped) == 4
