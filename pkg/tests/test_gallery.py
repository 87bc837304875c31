import itertools

import pytest

from tropilinear import POS_INF, simon_growth, simon_s
from tropilinear.gallery import (
    boundary_height,
    extended_automaton,
    fig_cs_points,
    simon_automaton,
)
from tropilinear.tropical import BudgetExceeded


def test_score_examples():
    assert simon_s(()) == 0
    assert simon_s((1,)) == 1
    assert simon_s((0,)) == 0


def test_score_bounded_by_second_letter_count():
    # staying in the first state costs one per second letter, so the
    # score never exceeds that count
    for length in range(0, 9):
        for w in itertools.product((0, 1), repeat=length):
            assert simon_s(w) <= sum(w)


def test_invalid_letter():
    with pytest.raises(ValueError):
        simon_s((2,))


def test_growth_law():
    for n in range(1, 6):
        assert simon_growth(n) == (n * n + n) // 2


def test_growth_budget():
    with pytest.raises(BudgetExceeded):
        simon_growth(3, max_len=4)


def test_extended_matches_base_scores():
    auto6 = extended_automaton()
    for length in range(0, 11):
        words = list(itertools.product((0, 1), repeat=length))
        sample = words if length <= 6 else words[::37]
        for w in sample:
            assert auto6.score(w) == simon_s(w)


def test_length_tracker_block():
    auto6 = extended_automaton()
    from tropilinear.tropical import mat_vec
    state = auto6.final
    for steps in range(1, 8):
        state = mat_vec(auto6.letters[steps % 2], state)
        assert state[4] == -steps
        assert state[5] == 0


def test_fig_cs_points_small():
    res = fig_cs_points(1)
    assert set(res.points) == {(0, 0, 0), (0, -1, 0), (1, -1, 0)}
    assert all(p[2] == 0 for p in res.points)


def test_fig_cs_boundary():
    res = fig_cs_points(10)
    for n in range(1, 5):
        assert boundary_height(res, n) == -(n * n + n) // 2
    assert all(p[2] == 0 for p in res.points)
    # extremal points are pairwise incomparable in (score, -length)
    for p in res.extremal:
        for q in res.extremal:
            if p != q:
                assert not (q[0] >= p[0] and q[1] >= p[1])


def test_points_match_naive_enumeration():
    naive = set()
    for length in range(0, 7):
        for w in itertools.product((0, 1), repeat=length):
            naive.add((simon_s(w), -length, 0))
    assert set(fig_cs_points(6).points) == naive


def test_automaton_validation():
    from tropilinear import TropMatrix
    with pytest.raises(ValueError):
        # max-plus letters are rejected
        from tropilinear.gallery import WordAutomaton
        WordAutomaton((TropMatrix.identity(2),), (0, POS_INF), (0, POS_INF))
