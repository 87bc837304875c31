"""Executable min-plus automaton gallery.

A two-letter min-plus automaton due to I. Simon assigns each word w a
score s(w) = alpha mu(w) beta whose record values grow like the square
root of the word length: the least length reaching score n is
(n^2 + n)/2.  Appending a two-state diagonal block that tracks (-|w|, 0)
and projecting gives an exact point cloud whose upper boundary follows
the same quadratic law, which is the obstruction to expressing this
reachable family as a semilinear set.

Enumeration is breadth-first over words with the left-product state
vectors memoized and deduplicated per length, so scores up to n = 5
(length 15) take a fraction of a second instead of 2^15 products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .tropical import (
    MINPLUS,
    POS_INF,
    BudgetExceeded,
    Scalar,
    TropMatrix,
    dot,
    mat_vec,
    vec_mat,
)

DEFAULT_MAX_WORD_LENGTH = 64
INF = POS_INF  # min-plus zero


@dataclass(frozen=True)
class WordAutomaton:
    """Min-plus matrix representation of words: per-letter square
    matrices with an initial row and a final column."""

    letters: tuple  # TropMatrix per letter, all min-plus, same size
    initial: tuple  # row vector
    final: tuple    # column vector

    def __post_init__(self):
        dim = self.letters[0].rows
        for m in self.letters:
            if m.flavor != MINPLUS or m.rows != dim or m.cols != dim:
                raise ValueError("letters must be square min-plus matrices of one size")
        if len(self.initial) != dim or len(self.final) != dim:
            raise ValueError("initial/final dimension mismatch")

    @property
    def alphabet(self) -> int:
        return len(self.letters)

    def score(self, word: Sequence[int]) -> Scalar:
        """alpha mu(word) beta, exact."""
        state = self.initial
        for a in word:
            if not 0 <= a < self.alphabet:
                raise ValueError(f"letter index {a} out of range")
            state = vec_mat(state, self.letters[a])
        return dot(state, self.final, MINPLUS)


def simon_automaton() -> WordAutomaton:
    """The 4-state score automaton."""
    m1 = TropMatrix.from_rows([
        (0, INF, INF, INF),
        (INF, 1, 1, INF),
        (INF, INF, INF, INF),
        (INF, INF, INF, 0),
    ], MINPLUS)
    m2 = TropMatrix.from_rows([
        (1, 1, INF, INF),
        (INF, INF, INF, 0),
        (INF, INF, INF, 0),
        (INF, INF, INF, 0),
    ], MINPLUS)
    return WordAutomaton((m1, m2), (0, INF, INF, INF), (0, INF, INF, 0))


def _diag_block(m: TropMatrix) -> TropMatrix:
    """diag(m, D) with the 2x2 length-tracking block D = diag(-1, 0)."""
    d = ((-1, INF), (INF, 0))
    rows = [tuple(r) + (INF, INF) for r in m.data]
    rows += [(INF,) * m.cols + d[0], (INF,) * m.cols + d[1]]
    return TropMatrix.from_rows(rows, MINPLUS)


def extended_automaton() -> WordAutomaton:
    """6-state automaton: the score block plus the (-|w|, 0) tracker,
    started from the column (0, inf, inf, 0, 0, 0)."""
    base = simon_automaton()
    letters = tuple(_diag_block(m) for m in base.letters)
    return WordAutomaton(letters,
                         initial=(0, INF, INF, INF, INF, INF),
                         final=(0, INF, INF, 0, 0, 0))


def simon_s(word: Sequence[int]) -> Scalar:
    """Score of a word over letter indices 0 and 1."""
    return simon_automaton().score(word)


def simon_growth(n: int, max_len: int = DEFAULT_MAX_WORD_LENGTH) -> int:
    """Least word length whose score reaches n, certified by exhaustive
    breadth-first search with memoized state vectors."""
    if n < 1:
        raise ValueError("n must be at least 1")
    auto = simon_automaton()
    frontier = {auto.initial}
    for length in range(max_len + 1):
        if any(dot(s, auto.final, MINPLUS) >= n for s in frontier):
            return length
        frontier = {vec_mat(s, m) for s in frontier for m in auto.letters}
    raise BudgetExceeded(f"no word of length <= {max_len} reaches score {n}")


class StaircasePoints(NamedTuple):
    points: tuple    # deduplicated (s(w), -|w|, 0) triples, sorted
    extremal: tuple  # the subset not dominated in (score up, length down)


def fig_cs_points(max_len: int) -> StaircasePoints:
    """Exact (score, -length, 0) cloud of all words up to max_len.

    States are the right-product columns mu(w) final, extended on the
    left and deduplicated per length.  A point is extremal when no other
    point has both a score at least as high and a length at most as
    short; those are the bold boundary points of the staircase.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    auto = extended_automaton()
    pts = set()
    frontier = {auto.final}
    for _ in range(max_len + 1):
        for st in frontier:
            pts.add((st[0], st[4], st[5]))
        frontier = {mat_vec(m, st) for st in frontier for m in auto.letters}
    points = tuple(sorted(pts, key=_point_key))
    extremal = tuple(p for p in points
                     if not any(q != p and q[0] >= p[0] and q[1] >= p[1]
                                for q in points))
    return StaircasePoints(points, extremal)


def _point_key(p):
    return tuple((0, x) if isinstance(x, int) else (1, 0) for x in p)


def boundary_height(res: StaircasePoints, score: int):
    """Greatest -|w| among extremal points of the given score, or None."""
    heights = [p[1] for p in res.extremal if p[0] == score]
    return max(heights) if heights else None
