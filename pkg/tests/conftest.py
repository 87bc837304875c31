"""Shared fixtures and independent oracles for the test suite."""

import itertools
import random

import pytest

from tropilinear import LtiSystem, NEG_INF, POS_INF, TropMatrix, vec_mul
from tropilinear.tropical import is_finite


@pytest.fixture
def exab():
    """The three-machines-in-tandem system (A, B, C)."""
    a = TropMatrix.from_rows([[1, NEG_INF, NEG_INF],
                              [5, 2, NEG_INF],
                              [NEG_INF, 6, 3]])
    b = TropMatrix.from_rows([[0], [NEG_INF], [NEG_INF]])
    c = TropMatrix.from_rows([[NEG_INF, NEG_INF, 3]])
    return LtiSystem(a, b, c)


def scaled_period(p, times):
    """times copies of a raw period under the monoid product: infinite
    entries stay put for times >= 1, the empty product is the unit."""
    if times == 0:
        return tuple(0 for _ in p)
    return tuple(e if not is_finite(e) else times * e for e in p)


def raw_denotation(base, raw_periods, max_mult):
    """Bounded enumeration of {base} + raw_periods* with multiplicities up
    to max_mult per period; periods may carry infinite entries."""
    out = set()
    for mults in itertools.product(range(max_mult + 1), repeat=len(raw_periods)):
        point = tuple(base)
        for p, times in zip(raw_periods, mults):
            point = vec_mul(point, scaled_period(p, times))
        out.add(point)
    return out


def random_scalar(rng, lo=-5, hi=5, p_inf=0.15, allow_pos=True):
    r = rng.random()
    if r < p_inf / 2:
        return NEG_INF
    if allow_pos and r < p_inf:
        return POS_INF
    return rng.randint(lo, hi)


def random_vec(rng, dim, **kw):
    return tuple(random_scalar(rng, **kw) for _ in range(dim))


def random_finite_vec(rng, dim, lo=-5, hi=5):
    return tuple(rng.randint(lo, hi) for _ in range(dim))


def rng_for(name: str) -> random.Random:
    return random.Random(f"tropilinear:{name}")
