"""Two-phase domino boards: strip values, fast solver, closed forms, bluff."""

import itertools

import pytest

from gamelab.core import Outcome, Solver
from gamelab.cram import (
    CRAM,
    CRAM_SEARCH,
    MAX_CELLS,
    BluffReport,
    GridBoard,
    Phase,
    bluff_check,
    bluff_report,
    canonical_board,
    cram_closed_form,
    cram_outcome,
    empty_board,
    g007,
    g007_certificate,
    legal_moves,
    phase1_value,
    post_button_value,
)

from reference import board_state, cram_moves, cram_start, naive_outcome, strip_value

N, P = Outcome.N, Outcome.P


# -- strip values --------------------------------------------------------------


def test_g007_prefix():
    assert [g007(n) for n in range(12)] == [0, 0, 1, 1, 2, 0, 3, 1, 1, 0, 3, 3]


def test_g007_matches_independent_recursion():
    for n in range(200):
        assert g007(n) == strip_value(n), n


def test_g007_certificate_and_tail():
    cert = g007_certificate()
    assert (cert.preperiod, cert.period) == (52, 34)
    for n in (60, 123, 300, 5_000, 10**9):
        assert g007(n) == g007(n + 34), n


def test_g007_zeros_are_all_odd_in_range():
    zeros = {n for n in range(1, 501) if g007(n) == 0}
    assert all(n % 2 == 1 for n in zeros)
    assert {1, 5, 9, 15, 21, 25} <= zeros
    assert all(g007(n) != 0 for n in range(2, 501, 2))


def test_g007_domain():
    with pytest.raises(ValueError):
        g007(-1)


# -- boards --------------------------------------------------------------------


def test_board_record_round_trip():
    board = empty_board(3, 4)
    assert board.to_record() == "3 4 before 0x0"
    assert GridBoard.from_record("3 4 before 0x0") == board
    busy = GridBoard(2, 3, 0b100101, Phase.AFTER)
    assert GridBoard.from_record(busy.to_record()) == busy


def test_board_record_errors():
    with pytest.raises(ValueError):
        GridBoard.from_record("3 4 before")
    with pytest.raises(ValueError):
        GridBoard.from_record("3 4 sideways 0x0")


def test_board_validation():
    with pytest.raises(ValueError):
        GridBoard(0, 3)
    with pytest.raises(ValueError):
        GridBoard(9, 8)  # 72 cells > 64
    with pytest.raises(ValueError):
        GridBoard(2, 2, occupied=1 << 4)
    with pytest.raises(ValueError):
        GridBoard(2, 2, occupied=-1)
    with pytest.raises(ValueError):
        GridBoard(2, 2, phase="before")
    assert GridBoard(8, 8).rows == 8
    assert MAX_CELLS == 64


def test_is_free():
    board = GridBoard(2, 3, 0b000001)
    assert not board.is_free(0, 0)
    assert board.is_free(1, 2)
    with pytest.raises(ValueError):
        board.is_free(2, 0)


def test_canonical_board_flip_invariance():
    board = GridBoard(2, 3, 0b001001)  # cells (0,0) and (1,0)
    flipped = GridBoard(2, 3, 0b100100)  # cells (0,2) and (1,2)
    assert canonical_board(board) == canonical_board(flipped)
    assert canonical_board(board).occupied == 0b001001
    # Canonicalization never changes shape or phase.
    after = GridBoard(2, 3, 0b100100, Phase.AFTER)
    canon = canonical_board(after)
    assert (canon.rows, canon.cols, canon.phase) == (2, 3, Phase.AFTER)


def test_outcome_invariant_under_flips():
    solver = Solver(CRAM)
    base = GridBoard(3, 3, 0b000000110)
    want = solver.outcome(base)
    for occ in (0b000000011, 0b110000000, 0b011000000):
        assert solver.outcome(GridBoard(3, 3, occ)) is want


# -- moves ---------------------------------------------------------------------


def test_legal_moves_button_first():
    moves = legal_moves(empty_board(1, 3))
    assert [b.to_record() for b in moves] == ["1 3 after 0x0"]
    moves = legal_moves(empty_board(2, 1))
    assert [b.to_record() for b in moves] == ["2 1 after 0x0", "2 1 before 0x3"]
    assert legal_moves(GridBoard(2, 2, 0b1111, Phase.AFTER)) == []


def test_legal_moves_by_phase():
    board = empty_board(2, 2)
    before = legal_moves(board)
    assert before[0].phase is Phase.AFTER and before[0].occupied == 0
    placements = {b.occupied for b in before[1:]}
    assert placements == {0b0101, 0b1010}  # the two vertical dominoes
    assert all(b.phase is Phase.BEFORE for b in before[1:])
    after = legal_moves(GridBoard(2, 2, 0, Phase.AFTER))
    assert {b.occupied for b in after} == {0b0011, 0b1100}
    assert all(b.phase is Phase.AFTER for b in after)


def test_legal_moves_match_cell_set_reference():
    for rows, cols in [(2, 3), (3, 3), (3, 2), (1, 4)]:
        for occ in range(1 << (rows * cols)):
            for phase, pushed in ((Phase.BEFORE, False), (Phase.AFTER, True)):
                board = GridBoard(rows, cols, occ, phase)
                got = {
                    (b.occupied, b.phase is Phase.AFTER) for b in legal_moves(board)
                }
                ref = set()
                for rows2, cols2, cells, pushed2 in cram_moves(
                    board_state(rows, cols, occ, pushed)
                ):
                    mask = 0
                    for r, c in cells:
                        mask |= 1 << (r * cols + c)
                    ref.add((mask, pushed2))
                assert got == ref, (rows, cols, occ, phase)


# -- after-phase reduction -------------------------------------------------------


def test_post_button_value_examples():
    assert post_button_value(GridBoard(2, 3, 0, Phase.AFTER)) == 0
    assert post_button_value(GridBoard(1, 5, 0b00100, Phase.AFTER)) == 0
    assert post_button_value(GridBoard(1, 5, 0, Phase.AFTER)) == g007(5) == 0
    assert post_button_value(GridBoard(1, 4, 0, Phase.AFTER)) == 2
    assert post_button_value(GridBoard(2, 4, 0b0000_0001, Phase.AFTER)) == g007(3) ^ g007(4)


def test_post_button_value_empty_boards():
    for rows in range(1, 7):
        for cols in range(1, 7):
            want = 0
            for _ in range(rows):
                want ^= g007(cols)
            board = GridBoard(rows, cols, 0, Phase.AFTER)
            assert post_button_value(board) == want


def test_post_button_value_equals_search_grundy():
    solver = Solver(CRAM_SEARCH)
    for rows, cols in [(1, 6), (2, 3), (3, 3), (2, 4)]:
        for occ in range(1 << (rows * cols)):
            board = GridBoard(rows, cols, occ, Phase.AFTER)
            assert post_button_value(board) == solver.grundy(board), (rows, cols, occ)


# -- outcomes ------------------------------------------------------------------


def test_outcome_examples():
    assert cram_outcome(empty_board(2, 5)) is N
    assert cram_outcome(empty_board(3, 4)) is P
    assert cram_outcome(empty_board(5, 4)) is P
    assert cram_outcome(empty_board(1, 3)) is P
    assert cram_outcome(empty_board(1, 2)) is P
    assert cram_outcome(empty_board(3, 3)) is N


def test_fast_solver_matches_pure_search():
    fast = Solver(CRAM)
    pure = Solver(CRAM_SEARCH)
    for rows, cols in [(1, 5), (2, 3), (3, 3), (2, 5), (4, 3), (3, 4)]:
        board = empty_board(rows, cols)
        assert fast.outcome(board) is pure.outcome(board), (rows, cols)
    for occ in range(0, 1 << 6, 3):
        before = GridBoard(2, 3, occ)
        assert fast.outcome(before) is pure.outcome(before), occ


def test_outcomes_match_naive_reference():
    fast = Solver(CRAM)
    memo = {}
    for rows in range(1, 5):
        for cols in range(1, 5):
            if rows * cols > 12:
                continue
            want = naive_outcome(cram_moves, cram_start(rows, cols), memo=memo)
            assert fast.outcome(empty_board(rows, cols)).value == want, (rows, cols)


def test_closed_form_examples():
    assert cram_closed_form(2, 7) is N
    assert cram_closed_form(4, 4) is N
    assert cram_closed_form(7, 9) is N  # odd width: zero strip value
    assert cram_closed_form(1, 1) is N
    assert cram_closed_form(3, 4) is P
    assert cram_closed_form(3, 10) is P
    assert cram_closed_form(5, 4) is P
    assert cram_closed_form(9, 3) is P  # g007(9) == 0
    assert cram_closed_form(5, 3) is P  # g007(5) == 0
    assert cram_closed_form(7, 3) is N  # g007(7) == 1
    assert cram_closed_form(5, 6) is None
    assert cram_closed_form(7, 7) is None


def test_closed_form_matches_search_small():
    for rows in range(1, 5):
        for cols in range(1, 6):
            want = cram_closed_form(rows, cols)
            if want is not None:
                assert cram_outcome(empty_board(rows, cols)) is want, (rows, cols)


# -- bluff audit ----------------------------------------------------------------


def test_phase1_value():
    assert phase1_value(3, 5) == g007(3) == 1
    assert phase1_value(3, 4) == 0  # even width: values pair off
    assert phase1_value(1, 7) == 0  # no room for a vertical domino
    assert phase1_value(4, 3) == g007(4) == 2


def test_bluff_holds_on_three_row_odd_boards():
    for cols in (1, 3, 5, 7, 9):
        report = bluff_report(3, cols)
        assert isinstance(report, BluffReport)
        assert report.holds, cols
        assert report.outcome is N
        assert report.phase1_value == 1
        assert report.losing_phase1_moves == 0
        assert report.total_phase1_moves == 2 * cols
        assert bluff_check(3, cols)


def test_bluff_fails_elsewhere():
    assert not bluff_check(2, 2)
    assert not bluff_check(2, 4)
    assert not bluff_check(1, 5)
    assert not bluff_check(4, 3)
    report = bluff_report(4, 3)
    assert report.phase1_value == 2
    assert report.losing_phase1_moves > 0


def test_bluff_small_two_by_three():
    report = bluff_report(2, 3)
    assert report.holds and report.outcome is N and report.phase1_value == 1
