"""Nonnegative integer linear algebra.

Solves homogeneous systems M y = 0 and inhomogeneous systems M y = b over
the naturals: ``hilbert_basis`` returns the unique minimal generating set
of the solution monoid, ``min_solutions`` the componentwise-minimal
solutions.  Every solution of M y = b is one minimal solution plus an
N-combination of the Hilbert basis of M y = 0.

The engine is a completion over a breadth-first frontier: start from the
unit vectors, extend a node y by e_j only while <My, Me_j> < 0, prune
nodes dominating an already-found solution.  Exact and complete; a node
budget turns pathological inputs into an error instead of a hang.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .tropical import BudgetExceeded

DEFAULT_NODE_BUDGET = 10**6


@dataclass(frozen=True)
class LinSystem:
    """Integer linear system: rows of ``matrix`` are equations, ``rhs`` the
    right-hand side (all zero for a homogeneous system)."""

    matrix: tuple
    rhs: tuple = field(default=())

    def __post_init__(self):
        matrix = tuple(tuple(int(c) for c in row) for row in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        if not matrix or not matrix[0]:
            raise ValueError("system needs at least one equation and one unknown")
        width = len(matrix[0])
        if any(len(r) != width for r in matrix):
            raise ValueError("ragged coefficient rows")
        rhs = tuple(int(c) for c in self.rhs) if self.rhs else (0,) * len(matrix)
        if len(rhs) != len(matrix):
            raise ValueError("rhs length does not match equation count")
        object.__setattr__(self, "rhs", rhs)

    @property
    def unknowns(self) -> int:
        return len(self.matrix[0])

    def columns(self) -> list:
        return [tuple(row[j] for row in self.matrix) for j in range(self.unknowns)]

    def is_homogeneous(self) -> bool:
        return all(c == 0 for c in self.rhs)


def _dominates(y: tuple, b: tuple) -> bool:
    return all(yi >= bi for yi, bi in zip(y, b))


def _sdot(u: tuple, v: tuple) -> int:
    return sum(a * b for a, b in zip(u, v))


def _completion(cols, caps, budget, want_first_with_last_one=False):
    """Breadth-first completion for minimal y != 0 with sum_j y_j col_j = 0.

    ``caps[j]`` bounds coordinate j (None = unbounded).  With
    ``want_first_with_last_one`` the search stops at the first solution
    whose last coordinate is 1 and returns it alone.
    """
    k = len(cols)
    m = len(cols[0]) if cols else 0
    zero = (0,) * m
    basis = []
    frontier = {}
    for j, c in enumerate(cols):
        if caps[j] is not None and caps[j] < 1:
            continue
        y = tuple(1 if i == j else 0 for i in range(k))
        frontier[y] = c
    generated = len(frontier)
    while frontier:
        nxt = {}
        for y, d in frontier.items():
            if any(_dominates(y, b) for b in basis):
                continue
            if d == zero:
                if want_first_with_last_one and y[-1] == 1:
                    return [y]
                basis.append(y)
                continue
            for j, c in enumerate(cols):
                cap = caps[j]
                if cap is not None and y[j] >= cap:
                    continue
                if _sdot(d, c) >= 0:
                    continue
                y2 = y[:j] + (y[j] + 1,) + y[j + 1:]
                if y2 in nxt:
                    continue
                generated += 1
                if generated > budget:
                    raise BudgetExceeded(
                        f"completion exceeded the node budget of {budget}")
                nxt[y2] = tuple(a + b for a, b in zip(d, c))
        frontier = nxt
    if want_first_with_last_one:
        return []
    # The frontier discipline already yields minimal solutions; the filter
    # below is a cheap final guarantee.
    minimal = [y for y in basis
               if not any(b != y and _dominates(y, b) for b in basis)]
    minimal.sort()
    return minimal


def hilbert_basis(sys: LinSystem, budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """Minimal generating set of {y in N^k : M y = 0}, sorted, exact."""
    if not sys.is_homogeneous():
        raise ValueError("hilbert_basis expects a homogeneous system")
    cols = sys.columns()
    return tuple(_completion(cols, [None] * len(cols), budget))


def min_solutions(sys: LinSystem, budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """Componentwise-minimal solutions of M y = rhs; empty iff infeasible.

    Computed on the homogenized system (an extra unit-capped variable with
    column -rhs); the minimal solutions are the basis elements taking that
    variable exactly once.
    """
    cols = sys.columns()
    neg_rhs = tuple(-c for c in sys.rhs)
    caps = [None] * len(cols) + [1]
    found = _completion(cols + [neg_rhs], caps, budget)
    return tuple(y[:-1] for y in found if y[-1] == 1)


def feasible_solution(sys: LinSystem,
                      budget: int = DEFAULT_NODE_BUDGET) -> Optional[tuple]:
    """One solution of M y = rhs over the naturals, or None.

    Early-stopping variant of ``min_solutions`` for bare feasibility.
    """
    cols = sys.columns()
    neg_rhs = tuple(-c for c in sys.rhs)
    caps = [None] * len(cols) + [1]
    found = _completion(cols + [neg_rhs], caps, budget,
                        want_first_with_last_one=True)
    return found[0][:-1] if found else None


def solves(sys: LinSystem, y: Sequence[int]) -> bool:
    """Exact check that y satisfies the system."""
    if len(y) != sys.unknowns:
        raise ValueError("solution length does not match unknown count")
    return all(_sdot(row, tuple(y)) == r for row, r in zip(sys.matrix, sys.rhs))
