"""Semilinear subsets of the monoid of extended-integer vectors.

A linear set is a base vector plus the star of finitely many periods,
``{a} + {p1,...,pk}*``; a semilinear set is a finite union of those.  The
normal form used throughout keeps all periods finite (infinite entries are
folded into bases by ``normalize``), so membership and intersection reduce
to nonnegative integer linear systems handled by :mod:`.diophantine`.

Coordinates where the base is infinite stay infinite under any period
(the product absorbs), so every point of a normalized linear set carries
exactly the base's infinity pattern.  Period entries on such coordinates
are canonically zeroed; they are semantically inert.

Sets are immutable; the component list is kept sorted and deduplicated,
giving a syntactic canonical form (the representation itself is not unique
and no minimality of the number of components is claimed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from . import diophantine
from .tropical import (
    NEG_INF,
    POS_INF,
    FormatError,
    Scalar,
    ShapeError,
    TropilinearError,
    Vec,
    format_vector,
    is_finite,
    parse_scalar,
    pattern,
    vec_mul,
)

DEFAULT_CELL_CAP = 10**7


class BoxTooLarge(TropilinearError):
    """equal_on_box was asked to sweep more cells than the configured cap."""


@dataclass(frozen=True)
class LinearSet:
    """Normal-form linear set: arbitrary base, finite nonzero periods.

    Use :func:`linear_set` to construct; it enforces the normal form.
    """

    base: tuple
    periods: tuple

    @property
    def dim(self) -> int:
        return len(self.base)

    def sort_key(self):
        return (tuple((_rank(x), x if is_finite(x) else 0) for x in self.base),
                self.periods)


def _rank(x: Scalar) -> int:
    if x is NEG_INF:
        return -1
    if x is POS_INF:
        return 1
    return 0


def linear_set(base: Sequence[Scalar], periods: Iterable[Sequence[int]]) -> LinearSet:
    """Build a normal-form component: finite periods only, zeroed on the
    base's infinite coordinates, deduplicated, nonzero, sorted."""
    base = tuple(base)
    n = len(base)
    cleaned = set()
    for p in periods:
        p = tuple(p)
        if len(p) != n:
            raise ShapeError("period dimension does not match base")
        if not all(isinstance(e, int) for e in p):
            raise ValueError("normal-form periods must be finite integers")
        p = tuple(0 if not is_finite(b) else e for e, b in zip(p, base))
        if any(e != 0 for e in p):
            cleaned.add(p)
    return LinearSet(base, tuple(sorted(cleaned)))


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of linear sets of equal dimension, canonically ordered.

    The empty union denotes the empty set; the dimension is tracked
    explicitly so empty sets still compose.
    """

    dim: int
    components: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ShapeError("dimension must be at least 1")
        for c in self.components:
            if c.dim != self.dim:
                raise ShapeError("component dimension mismatch")

    def is_empty(self) -> bool:
        return not self.components


def canonical(components: Iterable[LinearSet], dim: Optional[int] = None) -> SemilinearSet:
    """Canonicalize a collection of components into a semilinear set."""
    comps = list(components)
    if dim is None:
        if not comps:
            raise ShapeError("dimension required for an empty set")
        dim = comps[0].dim
    uniq = sorted(set(comps), key=LinearSet.sort_key)
    return SemilinearSet(dim, tuple(uniq))


def empty_set(dim: int) -> SemilinearSet:
    return SemilinearSet(dim, ())


def singleton(x: Sequence[Scalar]) -> SemilinearSet:
    return canonical([linear_set(tuple(x), ())])


def normalize(base: Sequence[Scalar], raw_periods: Iterable[Sequence[Scalar]],
              dim: Optional[int] = None) -> SemilinearSet:
    """Rewrite ``{base} + raw_periods*`` into normal form.

    Raw periods may carry infinite entries.  One such period r is unfolded
    a step ({b}+({r} u S)* = ({b}+S*) u ({b r}+{r}*+S*)); once consumed
    into the base its infinite coordinates are inert and are replaced by
    0, and the rewriting recurses until every period is finite.
    """
    base = tuple(base)
    n = dim if dim is not None else len(base)
    if len(base) != n:
        raise ShapeError("base dimension mismatch")
    periods = []
    seen = set()
    for p in raw_periods:
        p = tuple(p)
        if len(p) != n:
            raise ShapeError("period dimension does not match base")
        if p not in seen:
            seen.add(p)
            periods.append(p)

    def rewrite(b: tuple, ps: list) -> list:
        for idx, p in enumerate(ps):
            if not all(is_finite(e) for e in p):
                rest = ps[:idx] + ps[idx + 1:]
                pbar = tuple(e if is_finite(e) else 0 for e in p)
                return rewrite(b, rest) + rewrite(vec_mul(b, p), [pbar] + rest)
        return [linear_set(b, ps)]

    return canonical(rewrite(base, periods), dim=n)


def star(vectors: Iterable[Sequence[Scalar]], dim: int) -> SemilinearSet:
    """Kleene star of a finite vector set: ``normalize`` from the unit."""
    return normalize((0,) * dim, vectors, dim=dim)


def union(s: SemilinearSet, t: SemilinearSet) -> SemilinearSet:
    if s.dim != t.dim:
        raise ShapeError("union of sets of different dimension")
    return canonical(s.components + t.components, dim=s.dim)


def msum(s: SemilinearSet, t: SemilinearSet) -> SemilinearSet:
    """Monoid product of sets: pairwise sums of components.

    Bases multiply entrywise (which may create fresh infinities), period
    sets unite; the result is re-normalized.
    """
    if s.dim != t.dim:
        raise ShapeError("sum of sets of different dimension")
    out = []
    for a in s.components:
        for b in t.components:
            base = vec_mul(a.base, b.base)
            out.append(linear_set(base, a.periods + b.periods))
    return SemilinearSet(s.dim, tuple(sorted(set(out), key=LinearSet.sort_key)))


def project(s: SemilinearSet, keep: Sequence[int]) -> SemilinearSet:
    """Keep the given (0-based) coordinates, re-normalize, canonicalize."""
    keep = tuple(keep)
    if not keep:
        raise ShapeError("projection must keep at least one coordinate")
    if len(set(keep)) != len(keep):
        raise ShapeError("duplicate projection index")
    for i in keep:
        if not 0 <= i < s.dim:
            raise ShapeError(f"projection index {i} out of range for dim {s.dim}")
    out = []
    for c in s.components:
        base = tuple(c.base[i] for i in keep)
        periods = [tuple(p[i] for i in keep) for p in c.periods]
        out.append(linear_set(base, periods))
    return canonical(out, dim=len(keep))


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def _component_solution(c: LinearSet, x: Sequence[Scalar],
                        budget: int = diophantine.DEFAULT_NODE_BUDGET) -> Optional[tuple]:
    """Period multiplicities realizing x in component c, or None.

    The trivial component sizes (no period, single period) are decided by
    direct arithmetic; the general case is a feasibility run.
    """
    if pattern(x) != pattern(c.base):
        return None
    fin = [i for i, b in enumerate(c.base) if is_finite(b)]
    rhs = tuple(x[i] - c.base[i] for i in fin)
    k = len(c.periods)
    if not fin:
        return (0,) * k
    if k == 0:
        return () if all(r == 0 for r in rhs) else None
    if k == 1:
        p = tuple(c.periods[0][i] for i in fin)
        j = next(i for i, e in enumerate(p) if e != 0)
        q, rem = divmod(rhs[j], p[j])
        if rem != 0 or q < 0:
            return None
        return (q,) if all(e * q == r for e, r in zip(p, rhs)) else None
    matrix = tuple(tuple(c.periods[m][i] for m in range(k)) for i in fin)
    return diophantine.feasible_solution(diophantine.LinSystem(matrix, rhs), budget)


def member(s: SemilinearSet, x: Sequence[Scalar],
           budget: int = diophantine.DEFAULT_NODE_BUDGET) -> bool:
    """Exact membership test."""
    x = tuple(x)
    if len(x) != s.dim:
        raise ShapeError("point dimension does not match set")
    return any(_component_solution(c, x, budget) is not None for c in s.components)


# ---------------------------------------------------------------------------
# intersection
# ---------------------------------------------------------------------------

def _intersect_components(a: LinearSet, b: LinearSet,
                          budget: int) -> list:
    if pattern(a.base) != pattern(b.base):
        return []
    fin = [i for i, e in enumerate(a.base) if is_finite(e)]
    k1, k2 = len(a.periods), len(b.periods)
    if not fin:
        return [linear_set(a.base, ())]
    rhs = tuple(b.base[i] - a.base[i] for i in fin)
    if k1 + k2 == 0:
        return [a] if all(r == 0 for r in rhs) else []
    matrix = tuple(
        tuple(a.periods[m][i] for m in range(k1))
        + tuple(-b.periods[m][i] for m in range(k2))
        for i in fin)
    sys_in = diophantine.LinSystem(matrix, rhs)
    bases = diophantine.min_solutions(sys_in, budget)
    if not bases:
        return []
    homog = diophantine.hilbert_basis(diophantine.LinSystem(matrix), budget)

    def embed(u: tuple) -> tuple:
        # image of multiplicities u (for a's periods) as a full-dim vector
        out = [0] * len(a.base)
        for m, times in enumerate(u[:k1]):
            if times:
                for i in fin:
                    out[i] += times * a.periods[m][i]
        return tuple(out)

    periods = [embed(h) for h in homog]
    out = []
    for t in bases:
        base = vec_mul(a.base, embed(t))
        out.append(linear_set(base, periods))
    return out


def intersect(s: SemilinearSet, t: SemilinearSet,
              budget: int = diophantine.DEFAULT_NODE_BUDGET) -> SemilinearSet:
    """Exact intersection via minimal solutions plus Hilbert bases of the
    pairwise period-matching systems."""
    if s.dim != t.dim:
        raise ShapeError("intersection of sets of different dimension")
    out = []
    for a in s.components:
        for b in t.components:
            out.extend(_intersect_components(a, b, budget))
    return canonical(out, dim=s.dim)


# ---------------------------------------------------------------------------
# semantic equality on a box
# ---------------------------------------------------------------------------

class BoxEquality(NamedTuple):
    equal: bool
    counterexample: Optional[tuple]


def _component_checker(c: LinearSet, budget: int):
    """Fast membership closure for the finite part of one component."""
    fin = tuple(i for i, b in enumerate(c.base) if is_finite(b))
    base_fin = tuple(c.base[i] for i in fin)
    k = len(c.periods)
    if k == 0:
        def check(vals):  # vals: finite coordinates, aligned with fin
            return vals == base_fin
    elif k == 1:
        p = tuple(c.periods[0][i] for i in fin)
        j = next(i for i, e in enumerate(p) if e != 0)
        pj = p[j]

        def check(vals):
            q, rem = divmod(vals[j] - base_fin[j], pj)
            if rem or q < 0:
                return False
            return all(b + e * q == v for b, e, v in zip(base_fin, p, vals))
    else:
        matrix = tuple(tuple(c.periods[m][i] for m in range(k)) for i in fin)

        def check(vals):
            rhs = tuple(v - b for v, b in zip(vals, base_fin))
            sys = diophantine.LinSystem(matrix, rhs)
            return diophantine.feasible_solution(sys, budget) is not None
    return check


def equal_on_box(s: SemilinearSet, t: SemilinearSet, box: Sequence,
                 cell_cap: int = DEFAULT_CELL_CAP,
                 budget: int = diophantine.DEFAULT_NODE_BUDGET) -> BoxEquality:
    """Exhaustive membership comparison over a finite box.

    Each coordinate ranges over its box interval extended with both
    infinities.  Sweeps pattern classes in canonical order and, inside a
    class, finite coordinates in ascending row-major order; the first
    disagreement is returned.  Pattern classes in which neither set has a
    component hold no members of either and are skipped.
    """
    if s.dim != t.dim:
        raise ShapeError("sets of different dimension")
    if len(box) != s.dim:
        raise ShapeError("box dimension does not match sets")
    cells = 1
    for lo, hi in box:
        if hi < lo:
            raise ValueError("empty box interval")
        cells *= (hi - lo + 1) + 2
    if cells > cell_cap:
        raise BoxTooLarge(f"box sweep of {cells} cells exceeds cap {cell_cap}")

    by_pattern: dict = {}
    for side, sl in enumerate((s, t)):
        for c in sl.components:
            by_pattern.setdefault(pattern(c.base), ([], []))[side].append(c)

    for pat in sorted(by_pattern, key=lambda p: tuple((_rank(x), 0) for x in p)):
        s_checks = [_component_checker(c, budget) for c in by_pattern[pat][0]]
        t_checks = [_component_checker(c, budget) for c in by_pattern[pat][1]]
        fin = tuple(i for i, e in enumerate(pat) if e == 0)
        ranges = [range(box[i][0], box[i][1] + 1) for i in fin]
        for vals in itertools.product(*ranges):
            in_s = any(ch(vals) for ch in s_checks)
            in_t = any(ch(vals) for ch in t_checks)
            if in_s != in_t:
                witness = list(pat)
                for i, v in zip(fin, vals):
                    witness[i] = v
                return BoxEquality(False, tuple(witness))
    return BoxEquality(True, None)


def enumerate_points(s: SemilinearSet, max_mult: int) -> set:
    """All points with every period multiplicity at most ``max_mult``.

    A finite under-approximation of the denotation (exact for period-free
    sets); used for unfolding and by the test oracles.
    """
    out = set()
    for c in s.components:
        k = len(c.periods)
        for mults in itertools.product(range(max_mult + 1), repeat=k):
            shift = [0] * c.dim
            for m, times in enumerate(mults):
                if times:
                    for j, e in enumerate(c.periods[m]):
                        shift[j] += times * e
            out.add(vec_mul(c.base, tuple(shift)))
    return out


# ---------------------------------------------------------------------------
# text format: "dim N", then "base: ..." blocks with "period: ..." lines
# ---------------------------------------------------------------------------

def format_set(s: SemilinearSet) -> str:
    lines = [f"dim {s.dim}"]
    for c in s.components:
        lines.append("base: " + format_vector(c.base))
        for p in c.periods:
            lines.append("period: " + " ".join(str(e) for e in p))
    return "\n".join(lines) + "\n"


def parse_set(text: str) -> SemilinearSet:
    """Parse and normalize; raw periods may contain -inf/+inf tokens."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("dim"):
        raise FormatError("semilinear text must start with a 'dim N' line")
    try:
        dim = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError(f"bad dim line {lines[0]!r}") from None
    if dim < 1:
        raise FormatError("dimension must be at least 1")
    blocks = []
    for ln in lines[1:]:
        if ln.startswith("base:"):
            blocks.append((_parse_coords(ln[5:], dim), []))
        elif ln.startswith("period:"):
            if not blocks:
                raise FormatError("period line before any base line")
            blocks[-1][1].append(_parse_coords(ln[7:], dim))
        else:
            raise FormatError(f"unrecognized line {ln!r}")
    out = empty_set(dim)
    for base, periods in blocks:
        out = union(out, normalize(base, periods, dim=dim))
    return out


def _parse_coords(text: str, dim: int) -> Vec:
    toks = text.split()
    if len(toks) != dim:
        raise FormatError(f"expected {dim} coordinates, got {len(toks)}")
    return tuple(parse_scalar(t) for t in toks)
