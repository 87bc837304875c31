import itertools

import pytest

from tropilinear import LinSystem, feasible_solution, hilbert_basis, min_solutions
from tropilinear.diophantine import solves
from tropilinear.tropical import BudgetExceeded

from conftest import rng_for


def brute_solutions(sys: LinSystem, bound: int):
    k = sys.unknowns
    out = set()
    for y in itertools.product(range(bound + 1), repeat=k):
        if solves(sys, y):
            out.add(y)
    return out


def minimal_of(vectors):
    vecs = set(vectors)
    return {v for v in vecs
            if not any(w != v and all(a <= b for a, b in zip(w, v)) for w in vecs)}


def test_hilbert_examples():
    assert hilbert_basis(LinSystem(((1, -1),))) == ((1, 1),)
    assert hilbert_basis(LinSystem(((2, -3),))) == ((3, 2),)
    assert set(hilbert_basis(LinSystem(((1, 1, -2),)))) == \
        {(2, 0, 1), (0, 2, 1), (1, 1, 1)}


def test_min_solutions_examples():
    assert set(min_solutions(LinSystem(((2, 1),), (3,)))) == {(0, 3), (1, 1)}
    assert min_solutions(LinSystem(((2,),), (3,))) == ()
    assert min_solutions(LinSystem(((3, -2),), (0,))) == ((0, 0),)


def test_hilbert_brute_force_vs_examples():
    sys3 = LinSystem(((1, 1, -2),))
    brute = brute_solutions(sys3, 4) - {(0, 0, 0)}
    assert minimal_of(brute) == set(hilbert_basis(sys3))


def test_feasible_solution():
    sol = feasible_solution(LinSystem(((2, 4), (4, 3)), (4, 8)))
    assert sol is not None and solves(LinSystem(((2, 4), (4, 3)), (4, 8)), sol)
    assert feasible_solution(LinSystem(((2,),), (5,))) is None
    assert feasible_solution(LinSystem(((1, -1),), (0,))) == (0, 0)


def test_outputs_sorted_and_minimal():
    rng = rng_for("dio-minimal")
    for _ in range(60):
        rows = rng.randint(1, 2)
        cols = rng.randint(1, 4)
        m = tuple(tuple(rng.randint(-4, 4) for _ in range(cols))
                  for _ in range(rows))
        hb = hilbert_basis(LinSystem(m))
        assert list(hb) == sorted(hb)
        for a in hb:
            for b in hb:
                if a != b:
                    assert not all(x <= y for x, y in zip(a, b))


def test_completeness_against_boxes():
    """Every brute-force solution in the box decomposes as one minimal
    solution plus a natural combination of the Hilbert basis, and every
    such combination solves the system."""
    rng = rng_for("dio-complete")
    for _ in range(80):
        rows = rng.randint(1, 2)
        cols = rng.randint(1, 4)
        m = tuple(tuple(rng.randint(-4, 4) for _ in range(cols))
                  for _ in range(rows))
        rhs = tuple(rng.randint(-6, 6) for _ in range(rows))
        sysi = LinSystem(m, rhs)
        mins = set(min_solutions(sysi))
        basis = hilbert_basis(LinSystem(m))
        bound = 8

        reachable = set()
        frontier = list(mins)
        while frontier:
            cur = frontier.pop()
            if cur in reachable or any(c > bound for c in cur):
                continue
            reachable.add(cur)
            for h in basis:
                frontier.append(tuple(a + b for a, b in zip(cur, h)))
        reachable = {v for v in reachable if all(c <= bound for c in v)}

        brute = brute_solutions(sysi, bound)
        assert brute == reachable
        for v in itertools.islice(reachable, 50):
            assert solves(sysi, v)


def test_budget_error():
    with pytest.raises(BudgetExceeded):
        hilbert_basis(LinSystem(((5, -7, 11, -13),)), budget=10)


def test_validation():
    with pytest.raises(ValueError):
        LinSystem(())
    with pytest.raises(ValueError):
        LinSystem(((1, 2), (3,)))
    with pytest.raises(ValueError):
        hilbert_basis(LinSystem(((1,),), (2,)))
