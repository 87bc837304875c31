"""Acceptance criteria, one test per criterion.

Each test prints a single PASS line (visible with ``pytest -s`` or in the
captured output) including its runtime against the stated limit.  All
integer comparisons are exact.
"""

import itertools
import time

import pytest

from tropilinear import (
    BOUND_EXHAUSTED,
    MAXPLUS,
    MINPLUS,
    NEG_INF,
    POS_INF,
    LinSystem,
    LtiSystem,
    TropMatrix,
    canonical,
    class_max,
    compile_teg,
    congruent,
    control_solve,
    equal_on_box,
    finite_gens,
    hilbert_basis,
    linear_set,
    mat_vec,
    min_solutions,
    obs_k,
    obs_omega,
    reach_k,
    reach_omega,
    reduce_generators,
    residual_left,
    simon_growth,
    simulate,
    span_member,
    tadd,
    tmul,
)
from tropilinear import semilinear as slmod
from tropilinear.diophantine import solves
from tropilinear.gallery import boundary_height, fig_cs_points
from tropilinear.semilinear import enumerate_points
from tropilinear.spans import proportional
from tropilinear.teg import tandem_line_model
from tropilinear.tropical import vec_le, vec_mul

from conftest import (
    random_finite_vec,
    random_scalar,
    random_vec,
    raw_denotation,
    rng_for,
)

E = NEG_INF

EXR_COLUMNS = [
    (0, E, E),
    (1, 5, E),
    (2, 7, 11),
    (3, 9, 14),
    (4, 11, 17),
    (5, 13, 20),
    (6, 15, 23),
]


def _report(number: int, label: str, elapsed: float, limit: float):
    print(f"ACCEPTANCE {number:02d} PASS ({elapsed:.3f}s < {limit}s): {label}")
    assert elapsed < limit, f"criterion {number} exceeded {limit}s"


@pytest.fixture
def system(exab):
    return exab


def test_criterion_01_reach_omega_running_example(system):
    start = time.perf_counter()
    gens, cert = reach_omega(system)
    assert (cert.period, cert.transient) == (1, 2)
    expected = canonical([
        linear_set((0, E, E), ()),
        linear_set((1, 5, E), ()),
        linear_set((2, 7, 11), [(1, 2, 3)]),
    ])
    box = [(-20, 40)] * 3
    res = equal_on_box(gens.sl, expected, box)
    assert res.equal, res
    _report(1, "reach_omega matches the published generator set on "
               "[-20,40]^3 with infinity patterns",
            time.perf_counter() - start, 1.0)


def test_criterion_02_reachability_matrix(system):
    start = time.perf_counter()
    r7 = reach_k(system, 7)
    assert r7.columns() == EXR_COLUMNS
    assert r7.col(6) == (6, 15, 23)
    _report(2, "reach_k(7) equals the first seven published columns",
            time.perf_counter() - start, 0.1)


def test_criterion_03_ascending_chain(system):
    start = time.perf_counter()
    for k in range(1, 7):
        cols = reach_k(system, k).columns()
        reduced = reduce_generators(finite_gens(cols, dim=3))
        assert len(reduced.vectors) == k, (k, reduced.vectors)
    _report(3, "all reachability generators extremal for k = 1..6 "
               "(strictly ascending spans)",
            time.perf_counter() - start, 1.0)


def test_criterion_04_observable_congruence_classes(system):
    start = time.perf_counter()
    transposed = LtiSystem(system.a.transpose(), system.c.transpose(),
                           system.b.transpose())
    basis = obs_omega(transposed)
    for alpha in (-7, -8, -12):
        assert congruent(basis, (-2, -7, -11), (-2, alpha, -11))
    assert not congruent(basis, (-2, -7, -11), (-2, -6, -11))
    assert class_max(basis, (-2, -9, -11)) == (-2, -7, -11)
    assert class_max(basis, (0, 0, 0)) == (0, 0, 0)
    for x in itertools.product(range(-3, 4), repeat=3):
        if x != (0, 0, 0):
            assert not congruent(basis, (0, 0, 0), x), x
    _report(4, "congruence classes of the transposed system, including "
               "the singleton class of the origin",
            time.perf_counter() - start, 5.0)


def test_criterion_05_second_observability_example(system):
    start = time.perf_counter()
    o5 = obs_k(system, 5)
    assert o5.data == ((E, E, 3), (E, 9, 6), (14, 12, 9),
                       (17, 15, 12), (20, 18, 15))
    basis = obs_omega(system)
    assert basis.period == 1 and basis.transient == 2
    assert basis.rows[0].increments == ((3, 3, 3),)
    assert congruent(basis, (-5, -3, 0), (-6, -3, 0))
    assert not congruent(basis, (-5, -3, 0), (-4, -3, 0))
    _report(5, "observability rows, cyclicity with increment 3 from row "
               "index 2, and the x1 <= x3 - 5 class boundary",
            time.perf_counter() - start, 1.0)


def test_criterion_06_teg_compilation(system):
    start = time.perf_counter()
    compiled = compile_teg(tandem_line_model())
    assert compiled.a.data == system.a.data
    assert compiled.b.data == system.b.data
    assert compiled.c.data == system.c.data
    states = simulate(compiled, [(k,) for k in range(0, 7)])
    assert states == EXR_COLUMNS
    _report(6, "tandem-line TEG compiles to the published (A, B, C) and "
               "replays the reachability columns under u(k) = k-1",
            time.perf_counter() - start, 0.1)


def test_criterion_07_control_synthesis(system):
    start = time.perf_counter()
    u = control_solve(system, 3, (2, 7, 11))
    assert u == (2, 1, 0)  # u(1..3) = (0, 1, 2)
    assert mat_vec(reach_k(system, 3), u) == (2, 7, 11)
    assert control_solve(system, 1, (0, 0, 0)) is None
    r1 = reach_k(system, 1)
    for cand in range(-12, 13):
        assert mat_vec(r1, (cand,)) != (0, 0, 0)
    _report(7, "three-step control (0,1,2) is exact; the one-step target "
               "is infeasible, confirmed on the box [-12,12]",
            time.perf_counter() - start, 0.1)


def test_criterion_08_growth_law():
    start = time.perf_counter()
    for n in range(1, 6):
        assert simon_growth(n) == (n * n + n) // 2
    _report(8, "minimal word lengths 1,3,6,10,15 for scores 1..5, "
               "breadth-first certified",
            time.perf_counter() - start, 10.0)


def test_criterion_09_staircase_boundary():
    start = time.perf_counter()
    res = fig_cs_points(10)
    for n in range(1, 5):
        assert boundary_height(res, n) == -(n * n + n) // 2
    assert all(p[2] == 0 for p in res.points)
    _report(9, "staircase boundary heights -(n^2+n)/2 for n = 1..4 at "
               "word length 10",
            time.perf_counter() - start, 10.0)


# ---------------------------------------------------------------------------
# criterion 10: property suites
# ---------------------------------------------------------------------------

def _suite_semiring_axioms():
    rng = rng_for("acc-semiring")
    for flavor in (MAXPLUS, MINPLUS):
        eps = E if flavor == MAXPLUS else POS_INF
        for _ in range(5000):
            a, b, c = (random_scalar(rng, -60, 60, p_inf=0.25)
                       for _ in range(3))
            assert tadd(a, b, flavor) == tadd(b, a, flavor)
            assert tmul(a, b, flavor) == tmul(b, a, flavor)
            assert tadd(tadd(a, b, flavor), c, flavor) == \
                tadd(a, tadd(b, c, flavor), flavor)
            assert tmul(tmul(a, b, flavor), c, flavor) == \
                tmul(a, tmul(b, c, flavor), flavor)
            assert tmul(a, tadd(b, c, flavor), flavor) == \
                tadd(tmul(a, b, flavor), tmul(a, c, flavor), flavor)
            assert tadd(a, a, flavor) == a
            assert tmul(eps, a, flavor) == eps


def _suite_residuation_galois():
    rng = rng_for("acc-galois")
    for _ in range(1000):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = TropMatrix.from_rows(
            [random_vec(rng, cols, lo=-8, hi=8, p_inf=0.25)
             for _ in range(rows)])
        b = random_vec(rng, rows, lo=-8, hi=8, p_inf=0.25)
        x = residual_left(a, b)
        assert vec_le(mat_vec(a, x), b)
        for _ in range(6):
            cand = random_vec(rng, cols, lo=-12, hi=12, p_inf=0.2)
            if vec_le(mat_vec(a, cand), b):
                assert vec_le(cand, x)


def _random_set(rng, dim):
    comps = []
    for _ in range(rng.randint(1, 2)):
        base = random_vec(rng, dim, lo=-5, hi=5, p_inf=0.2)
        periods = [random_finite_vec(rng, dim, -5, 5)
                   for _ in range(rng.randint(0, 3))]
        comps.append(linear_set(base, [p for p in periods if any(p)]))
    return canonical(comps, dim=dim)


def _suite_semilinear_soundness():
    rng = rng_for("acc-slops")
    for trial in range(1000):
        dim = rng.randint(1, 4)
        op = trial % 5
        if op == 0:  # normalize against raw bounded enumeration
            base = random_vec(rng, dim, lo=-5, hi=5, p_inf=0.25)
            raw = [random_vec(rng, dim, lo=-4, hi=4, p_inf=0.35)
                   for _ in range(rng.randint(0, 3))]
            raw = [p for p in raw if any(e != 0 for e in p)]
            out = slmod.normalize(base, raw)
            for p in raw_denotation(base, raw, 3):
                assert slmod.member(out, p)
            assert enumerate_points(out, 3) <= raw_denotation(base, raw, 4)
        elif op == 1:  # union is exactly membership disjunction
            s, t = _random_set(rng, dim), _random_set(rng, dim)
            u = slmod.union(s, t)
            pts = set(itertools.islice(enumerate_points(s, 2), 40)) | \
                set(itertools.islice(enumerate_points(t, 2), 40))
            pts |= {random_vec(rng, dim, lo=-6, hi=6, p_inf=0.2)
                    for _ in range(10)}
            for p in pts:
                assert slmod.member(u, p) == \
                    (slmod.member(s, p) or slmod.member(t, p))
        elif op == 2:  # monoid sum: both inclusions at bounded depth
            s, t = _random_set(rng, dim), _random_set(rng, dim)
            m = slmod.msum(s, t)
            es = list(itertools.islice(enumerate_points(s, 2), 30))
            et = list(itertools.islice(enumerate_points(t, 2), 30))
            sums = {vec_mul(a, b) for a in es for b in et}
            for p in sums:
                assert slmod.member(m, p)
            full_sums = {vec_mul(a, b) for a in enumerate_points(s, 2)
                         for b in enumerate_points(t, 2)}
            for p in itertools.islice(enumerate_points(m, 2), 60):
                assert p in full_sums
        elif op == 3:  # intersection agrees with membership conjunction
            s, t = _random_set(rng, dim), _random_set(rng, dim)
            inter = slmod.intersect(s, t)
            for p in itertools.islice(enumerate_points(s, 2), 40):
                if slmod.member(t, p):
                    assert slmod.member(inter, p)
            for p in itertools.islice(enumerate_points(inter, 2), 40):
                assert slmod.member(s, p) and slmod.member(t, p)
        else:  # projection: image of enumeration, both ways
            s = _random_set(rng, dim)
            keep = tuple(sorted(rng.sample(range(dim), rng.randint(1, dim))))
            pr = slmod.project(s, keep)
            pts3 = enumerate_points(s, 3)
            proj = {tuple(p[i] for i in keep) for p in pts3}
            for p in proj:
                assert slmod.member(pr, p)
            for p in enumerate_points(pr, 3):
                assert p in proj


def _suite_hilbert_completeness():
    rng = rng_for("acc-hilbert")
    for _ in range(120):
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
                frontier.append(tuple(x + y for x, y in zip(cur, h)))
        brute = {y for y in itertools.product(range(bound + 1), repeat=cols)
                 if solves(sysi, y)}
        assert brute == reachable
        for y in itertools.islice(reachable, 30):
            assert solves(sysi, y)


def _suite_caratheodory():
    rng = rng_for("acc-caratheodory")
    positives = 0
    for _ in range(400):
        dim = rng.randint(1, 4)
        gens = [random_vec(rng, dim, lo=-5, hi=5, p_inf=0.2, allow_pos=False)
                for _ in range(rng.randint(1, 6))]
        g = finite_gens(gens, dim=dim)
        if rng.random() < 0.6:
            x = (E,) * dim
            for u in g.vectors:
                x = tuple(tadd(a, tmul(rng.randint(-4, 4), b))
                          for a, b in zip(x, u))
        else:
            x = random_vec(rng, dim, lo=-6, hi=6, p_inf=0.2, allow_pos=False)
        w = span_member(g, x)
        if w is not None:
            positives += 1
            assert len(w.generators) <= dim
            assert w.evaluate() == x
    assert positives >= 200


def test_criterion_10_property_suites():
    start = time.perf_counter()
    _suite_semiring_axioms()
    _suite_residuation_galois()
    _suite_semilinear_soundness()
    _suite_hilbert_completeness()
    _suite_caratheodory()
    _report(10, "semiring axioms (10^4 triples), residuation adjunction "
                "(10^3 systems), semilinear soundness (10^3 instances), "
                "Hilbert completeness on [0,8]^k, witness size <= n",
            time.perf_counter() - start, 60.0)
