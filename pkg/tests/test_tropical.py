import itertools

import pytest

from tropilinear import (
    MAXPLUS,
    MINPLUS,
    NEG_INF,
    POS_INF,
    FlavorError,
    ShapeError,
    TropMatrix,
    format_matrix,
    mat_mul,
    mat_vec,
    parse_matrix,
    residual_left,
    tadd,
    tmul,
    tquot,
)
from tropilinear.tropical import format_vector, parse_vector, pattern, vec_le

from conftest import random_scalar, random_vec, rng_for


def test_scalar_examples():
    assert tadd(3, 5) == 5
    assert tmul(3, 5) == 8
    assert tmul(NEG_INF, POS_INF) is NEG_INF
    assert tmul(POS_INF, NEG_INF) is NEG_INF
    assert tmul(POS_INF, 4) is POS_INF
    for x in (NEG_INF, -7, 0, 3, POS_INF):
        assert tmul(0, x) == x
        assert tadd(NEG_INF, x) == x


def test_minplus_duality():
    assert tadd(3, 5, MINPLUS) == 3
    assert tmul(POS_INF, NEG_INF, MINPLUS) is POS_INF
    assert tmul(NEG_INF, 4, MINPLUS) is NEG_INF
    for x in (NEG_INF, -2, 0, POS_INF):
        assert tadd(POS_INF, x, MINPLUS) == x


def test_total_order():
    ordering = [NEG_INF, -3, 0, 3, POS_INF]
    for i, a in enumerate(ordering):
        for j, b in enumerate(ordering):
            assert (a < b) == (i < j)
            assert (a <= b) == (i <= j)


def test_semiring_axioms_bulk():
    """Associativity, commutativity, distributivity, absorption and
    idempotence over ten thousand random triples, both flavors."""
    rng = rng_for("semiring")
    for flavor in (MAXPLUS, MINPLUS):
        eps = NEG_INF if flavor == MAXPLUS else POS_INF
        for _ in range(5000):
            a, b, c = (random_scalar(rng, -50, 50, p_inf=0.25) for _ in range(3))
            assert tadd(a, b, flavor) == tadd(b, a, flavor)
            assert tmul(a, b, flavor) == tmul(b, a, flavor)
            assert tadd(tadd(a, b, flavor), c, flavor) == tadd(a, tadd(b, c, flavor), flavor)
            assert tmul(tmul(a, b, flavor), c, flavor) == tmul(a, tmul(b, c, flavor), flavor)
            assert tmul(a, tadd(b, c, flavor), flavor) == \
                tadd(tmul(a, b, flavor), tmul(a, c, flavor), flavor)
            assert tadd(a, a, flavor) == a
            assert tmul(eps, a, flavor) == eps
            assert tadd(eps, a, flavor) == a
            assert tmul(0, a, flavor) == a


def test_natural_order_agrees_with_total_order():
    rng = rng_for("natural-order")
    for _ in range(2000):
        a = random_scalar(rng, -20, 20, p_inf=0.3)
        b = random_scalar(rng, -20, 20, p_inf=0.3)
        assert (tadd(a, b) == b) == (a <= b)


def test_pattern():
    assert pattern((5, NEG_INF, POS_INF)) == (0, NEG_INF, POS_INF)
    assert pattern((1, -2, 3)) == (0, 0, 0)
    p = pattern((7, NEG_INF, POS_INF))
    assert pattern(p) == p


@pytest.fixture
def a_exab():
    return TropMatrix.from_rows([[1, NEG_INF, NEG_INF],
                                 [5, 2, NEG_INF],
                                 [NEG_INF, 6, 3]])


def test_mat_mul_examples(a_exab):
    b = (0, NEG_INF, NEG_INF)
    assert mat_vec(a_exab, b) == (1, 5, NEG_INF)
    assert mat_vec(a_exab, mat_vec(a_exab, b)) == (2, 7, 11)
    ident = TropMatrix.identity(3)
    assert mat_mul(ident, a_exab).data == a_exab.data


def test_mat_mul_shape_and_flavor_errors(a_exab):
    with pytest.raises(ShapeError):
        mat_mul(a_exab, TropMatrix.identity(2))
    with pytest.raises(FlavorError):
        mat_mul(a_exab, TropMatrix.identity(3, MINPLUS))


def test_mat_mul_associative_random():
    rng = rng_for("matmul-assoc")
    for _ in range(150):
        n, m, p, q = (rng.randint(1, 4) for _ in range(4))
        mk = lambda r, c: TropMatrix.from_rows(
            [random_vec(rng, c, lo=-9, hi=9, p_inf=0.25) for _ in range(r)])
        a, b, c = mk(n, m), mk(m, p), mk(p, q)
        assert mat_mul(mat_mul(a, b), c).data == mat_mul(a, mat_mul(b, c)).data


def test_residuation_examples(a_exab):
    b = mat_vec(a_exab, (0, 0, 0))
    assert b == (1, 5, 6)
    x = residual_left(a_exab, b)
    assert x == (0, 0, 3)
    assert mat_vec(a_exab, x) == b
    x2 = residual_left(a_exab, (0, 0, 0))
    assert x2 == (-5, -6, -3)
    assert mat_vec(a_exab, x2) == (-4, 0, 0)
    assert vec_le(mat_vec(a_exab, x2), (0, 0, 0))
    assert residual_left(a_exab, (POS_INF,) * 3) == (POS_INF,) * 3


def test_residuation_greatest_by_brute_force(a_exab):
    """On a finite box the residual dominates every subsolution and is
    itself a solution of A x <= b."""
    b = (1, 5, 6)
    best = residual_left(a_exab, b)
    for x in itertools.product(range(-10, 11), repeat=3):
        if vec_le(mat_vec(a_exab, x), b):
            assert vec_le(x, best)


def test_residuation_galois_random():
    rng = rng_for("galois")
    for _ in range(1000):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = TropMatrix.from_rows(
            [random_vec(rng, cols, lo=-8, hi=8, p_inf=0.25) for _ in range(rows)])
        b = random_vec(rng, rows, lo=-8, hi=8, p_inf=0.25)
        x = residual_left(a, b)
        assert vec_le(mat_vec(a, x), b)
        for _ in range(8):
            cand = random_vec(rng, cols, lo=-12, hi=12, p_inf=0.2)
            if vec_le(mat_vec(a, cand), b):
                assert vec_le(cand, x)


def test_quotient_table():
    assert tquot(3, 5) == -2
    assert tquot(NEG_INF, NEG_INF) is POS_INF
    assert tquot(4, NEG_INF) is POS_INF
    assert tquot(POS_INF, NEG_INF) is POS_INF
    assert tquot(NEG_INF, 4) is NEG_INF
    assert tquot(POS_INF, 4) is POS_INF
    assert tquot(POS_INF, POS_INF) is POS_INF
    assert tquot(NEG_INF, POS_INF) is NEG_INF
    assert tquot(4, POS_INF) is NEG_INF


def test_matrix_text_round_trip(a_exab):
    text = format_matrix(a_exab)
    again = parse_matrix(text)
    assert again.data == a_exab.data and again.flavor == MAXPLUS
    assert format_matrix(again) == text
    m = parse_matrix("minplus 1 3\n-inf 0 +inf\n")
    assert m.flavor == MINPLUS and m.data == ((NEG_INF, 0, POS_INF),)
    assert format_matrix(m) == "minplus 1 3\n-inf 0 +inf\n"


def test_vector_round_trip():
    v = (NEG_INF, 42, POS_INF, -7)
    assert parse_vector(format_vector(v)) == v


def test_scalars_are_immutable_singletons():
    import copy
    import pickle

    assert copy.deepcopy(NEG_INF) is NEG_INF
    assert pickle.loads(pickle.dumps(POS_INF)) is POS_INF
    with pytest.raises(AttributeError):
        NEG_INF.sign = 1
