"""Rational semimodules: span membership, extremal reduction, direct images
and the decision oracles for the remaining closure operations.

Span membership over a finite family is residuation: the greatest scalar
putting a generator under the target is a coordinatewise minimum of
quotients, and the target is in the span iff the sum of the scaled
generators reproduces it, in which case one attaining generator per
coordinate yields a witness of size at most the dimension.

Over a semilinear family the same residuation criterion is decided per
coordinate: a linear component can attain coordinate i iff a system of
linear inequalities over the period multiplicities is feasible, which the
diophantine engine settles exactly.  Search budgets surface as the
``BOUND_EXHAUSTED`` outcome, never as a wrong answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import diophantine
from .semilinear import LinearSet, SemilinearSet, canonical, linear_set
from .tropical import (
    MAXPLUS,
    MINPLUS,
    NEG_INF,
    POS_INF,
    FlavorError,
    Scalar,
    ShapeError,
    TropMatrix,
    Vec,
    dot,
    is_finite,
    mat_vec,
    pattern,
    tmul,
    tquot,
    vec_add,
    vec_mul,
    vec_scale,
)


class _BoundExhausted:
    """Unique 'search budget ran out' outcome for the decision oracles."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOUND_EXHAUSTED"

    def __bool__(self):
        raise TypeError("bound_exhausted outcome is neither true nor false")


BOUND_EXHAUSTED = _BoundExhausted()


def proportional(g: Sequence[Scalar], h: Sequence[Scalar]) -> bool:
    """True iff g equals a finite scalar shift of h (same infinity pattern,
    constant difference on the finite coordinates)."""
    if pattern(g) != pattern(h):
        return False
    diffs = {a - b for a, b in zip(g, h) if is_finite(a)}
    return len(diffs) <= 1


@dataclass(frozen=True)
class GeneratorSet:
    """Generating family of a subsemimodule: either a finite vector list or
    a semilinear set of generators."""

    dim: int
    flavor: str
    vectors: Optional[tuple] = None
    sl: Optional[SemilinearSet] = None

    def __post_init__(self):
        if (self.vectors is None) == (self.sl is None):
            raise ValueError("exactly one of vectors/sl must be given")
        if self.sl is not None and self.sl.dim != self.dim:
            raise ShapeError("semilinear generator dimension mismatch")
        if self.vectors is not None:
            for v in self.vectors:
                if len(v) != self.dim:
                    raise ShapeError("generator dimension mismatch")

    @property
    def is_finite(self) -> bool:
        return self.vectors is not None


def finite_gens(vectors, dim: Optional[int] = None, flavor: str = MAXPLUS) -> GeneratorSet:
    """Finite generating family, deduplicated up to proportionality (the
    first representative of each ray is kept)."""
    vecs = [tuple(v) for v in vectors]
    if dim is None:
        if not vecs:
            raise ShapeError("dimension required for an empty family")
        dim = len(vecs[0])
    kept: list = []
    for v in vecs:
        if not any(proportional(v, w) for w in kept):
            kept.append(v)
    return GeneratorSet(dim, flavor, vectors=tuple(kept))


def semilinear_gens(s: SemilinearSet, flavor: str = MAXPLUS) -> GeneratorSet:
    return GeneratorSet(s.dim, flavor, sl=s)


@dataclass(frozen=True)
class SpanWitness:
    """Combination certificate: at most dim generators whose scaled sum is
    exactly the queried vector."""

    dim: int
    flavor: str
    generators: tuple
    scalars: tuple

    def evaluate(self) -> Vec:
        eps = NEG_INF if self.flavor == MAXPLUS else POS_INF
        acc = (eps,) * self.dim
        for lam, g in zip(self.scalars, self.generators):
            acc = vec_add(acc, vec_scale(lam, g, self.flavor), self.flavor)
        return acc


def _dual_vec(v) -> Vec:
    return tuple(-x for x in v)


def _dual_generators(g: GeneratorSet) -> GeneratorSet:
    flavor = MINPLUS if g.flavor == MAXPLUS else MAXPLUS
    if g.is_finite:
        return GeneratorSet(g.dim, flavor,
                            vectors=tuple(_dual_vec(v) for v in g.vectors))
    comps = [linear_set(_dual_vec(c.base), [_dual_vec(p) for p in c.periods])
             for c in g.sl.components]
    return GeneratorSet(g.dim, flavor, sl=canonical(comps, dim=g.dim))


def _dual_witness(w: SpanWitness) -> SpanWitness:
    flavor = MINPLUS if w.flavor == MAXPLUS else MAXPLUS
    return SpanWitness(w.dim, flavor,
                       tuple(_dual_vec(g) for g in w.generators),
                       tuple(-s for s in w.scalars))


def _residual_scalar(x, g) -> Scalar:
    """Greatest lambda with lambda (g) <= x (max-plus)."""
    acc = POS_INF
    for xi, gi in zip(x, g):
        q = tquot(xi, gi)
        if q < acc:
            acc = q
    return acc


def span_member(gens: GeneratorSet, x: Sequence[Scalar]) -> Optional[SpanWitness]:
    """Membership of x in the span of a finite family, with witness.

    Returns a witness (possibly empty, for the zero vector) or None.
    """
    if not gens.is_finite:
        raise ValueError("span_member expects a finite family; "
                         "see span_member_semilinear")
    x = tuple(x)
    if len(x) != gens.dim:
        raise ShapeError("vector dimension does not match generators")
    if gens.flavor == MINPLUS:
        w = span_member(_dual_generators(gens), _dual_vec(x))
        return None if w is None else _dual_witness(w)

    scaled = [( _residual_scalar(x, g), g) for g in gens.vectors]
    chosen: dict = {}
    for i, xi in enumerate(x):
        if xi is NEG_INF:
            continue
        hit = None
        for lam, g in scaled:
            if tmul(lam, g[i]) == xi:
                hit = (lam, g)
                break
        if hit is None:
            return None
        chosen.setdefault(hit[1], hit[0])
    return SpanWitness(gens.dim, MAXPLUS,
                       tuple(chosen.keys()), tuple(chosen.values()))


def _component_usable(a: tuple, x: tuple) -> bool:
    # the residuated scalar of any generator of {a}+P* against x is -inf
    # exactly when one of these clashes occurs
    for ai, xi in zip(a, x):
        if xi is NEG_INF and ai is not NEG_INF:
            return False
        if is_finite(xi) and ai is POS_INF:
            return False
    return True


def _attain_multiplicities(c: LinearSet, x: tuple, i: int, budget: int) -> Optional[tuple]:
    """Multiplicities y making coordinate i the residuation argmin, i.e.
    making the component's generator attain x_i exactly."""
    k = len(c.periods)
    constrained = [j for j in range(len(x))
                   if j != i and is_finite(x[j]) and is_finite(c.base[j])]
    target_i = x[i] - c.base[i]
    if k == 0:
        ok = all(x[j] - c.base[j] >= target_i for j in constrained)
        return () if ok else None
    if not constrained:
        return (0,) * k
    rows = []
    rhs = []
    for idx, j in enumerate(constrained):
        row = [c.periods[m][j] - c.periods[m][i] for m in range(k)]
        row += [1 if t == idx else 0 for t in range(len(constrained))]
        rows.append(tuple(row))
        rhs.append((x[j] - c.base[j]) - target_i)
    sol = diophantine.feasible_solution(
        diophantine.LinSystem(tuple(rows), tuple(rhs)), budget)
    return None if sol is None else sol[:k]


def _component_generator(c: LinearSet, y: tuple) -> Vec:
    shift = [0] * len(c.base)
    for m, times in enumerate(y):
        if times:
            for j, e in enumerate(c.periods[m]):
                shift[j] += times * e
    return vec_mul(c.base, tuple(shift))


def span_member_semilinear(gens: GeneratorSet, x: Sequence[Scalar],
                           budget: int = diophantine.DEFAULT_NODE_BUDGET):
    """Membership of x in the span of a semilinear family.

    Returns a SpanWitness, None, or BOUND_EXHAUSTED.  Decided coordinate
    by coordinate: x is in the span iff every coordinate above -inf is
    attained by the residuation-scaled generator of some component, and
    attainment is a linear feasibility problem over the multiplicities.
    """
    x = tuple(x)
    if len(x) != gens.dim:
        raise ShapeError("vector dimension does not match generators")
    if gens.flavor == MINPLUS:
        res = span_member_semilinear(_dual_generators(gens), _dual_vec(x), budget)
        return res if res is BOUND_EXHAUSTED or res is None else _dual_witness(res)
    if gens.is_finite:
        return span_member(gens, x)

    components = [c for c in gens.sl.components if _component_usable(c.base, x)]
    chosen: dict = {}
    exhausted = False
    for i, xi in enumerate(x):
        if xi is NEG_INF:
            continue
        hit = None
        if xi is POS_INF:
            for c in components:
                if c.base[i] is POS_INF:
                    hit = _component_generator(c, (0,) * len(c.periods))
                    break
        else:
            for c in components:
                if not is_finite(c.base[i]):
                    continue
                try:
                    y = _attain_multiplicities(c, x, i, budget)
                except diophantine.BudgetExceeded:
                    exhausted = True
                    continue
                if y is not None:
                    hit = _component_generator(c, y)
                    break
        if hit is None:
            return BOUND_EXHAUSTED if exhausted else None
        chosen.setdefault(hit, _residual_scalar(x, hit))
    witness = SpanWitness(gens.dim, MAXPLUS,
                          tuple(chosen.keys()), tuple(chosen.values()))
    assert witness.evaluate() == x
    return witness


def reduce_generators(gens: GeneratorSet) -> GeneratorSet:
    """Extremal subfamily of a finite max-plus family.

    A generator is kept iff it is outside the span of the others (after
    collapsing proportional duplicates); the survivors span the same
    semimodule.
    """
    if not gens.is_finite:
        raise ValueError("reduce_generators expects a finite family")
    if gens.flavor != MAXPLUS:
        raise FlavorError("extremal reduction is defined on the max-plus flavor")
    vecs: list = []
    for v in gens.vectors:  # collapse rays first, keeping first representatives
        if not any(proportional(v, w) for w in vecs):
            vecs.append(v)
    kept = []
    for i, g in enumerate(vecs):
        others = GeneratorSet(gens.dim, MAXPLUS,
                              vectors=tuple(v for j, v in enumerate(vecs) if j != i))
        if span_member(others, g) is None:
            kept.append(g)
    return GeneratorSet(gens.dim, gens.flavor, vectors=tuple(kept))


# ---------------------------------------------------------------------------
# direct image
# ---------------------------------------------------------------------------

def _nat_region(ineq_rows, rhs, k, budget):
    """Solutions over N^k of ineq_rows . y <= rhs, as (bases, periods).

    Empty inequality lists denote all of N^k.
    """
    if not ineq_rows:
        units = [tuple(1 if j == m else 0 for j in range(k)) for m in range(k)]
        return [(0,) * k], units
    slacks = len(ineq_rows)
    rows = []
    for idx, row in enumerate(ineq_rows):
        rows.append(tuple(row) + tuple(1 if t == idx else 0 for t in range(slacks)))
    sys_in = diophantine.LinSystem(tuple(rows), tuple(rhs))
    bases = [y[:k] for y in diophantine.min_solutions(sys_in, budget)]
    if not bases:
        return [], []
    periods = [h[:k] for h in
               diophantine.hilbert_basis(diophantine.LinSystem(tuple(rows)), budget)]
    return bases, periods


def _image_of_component(a: TropMatrix, c: LinearSet, budget: int) -> list:
    n = c.dim
    k = len(c.periods)
    T_NEG, T_POS, T_FIN = 0, 1, 2
    term_kind = []
    term_val = []
    for i in range(a.rows):
        kinds = []
        vals = []
        for j in range(n):
            aij, gj = a.data[i][j], c.base[j]
            if aij is NEG_INF or gj is NEG_INF:
                kinds.append(T_NEG)
                vals.append(None)
            elif aij is POS_INF or gj is POS_INF:
                kinds.append(T_POS)
                vals.append(None)
            else:
                kinds.append(T_FIN)
                vals.append(aij + gj)
        term_kind.append(kinds)
        term_val.append(vals)

    const_rows = {}
    select_rows = []
    for i in range(a.rows):
        if T_POS in term_kind[i]:
            const_rows[i] = POS_INF
        else:
            fin = [j for j in range(n) if term_kind[i][j] == T_FIN]
            if not fin:
                const_rows[i] = NEG_INF
            else:
                select_rows.append((i, fin))

    if k == 0:
        # single point: its image is the plain matrix-vector product
        return [linear_set(mat_vec(a, c.base), ())]

    out = []
    for sigma in itertools.product(*[fin for _, fin in select_rows]):
        ineq_rows = []
        rhs = []
        feasible = True
        for (i, fin), jstar in zip(select_rows, sigma):
            for j in fin:
                if j == jstar:
                    continue
                row = tuple(c.periods[m][j] - c.periods[m][jstar] for m in range(k))
                bound = term_val[i][jstar] - term_val[i][j]
                if any(row):
                    ineq_rows.append(row)
                    rhs.append(bound)
                elif bound < 0:
                    feasible = False
                    break
            if not feasible:
                break
        if not feasible:
            continue
        bases, periods = _nat_region(ineq_rows, rhs, k, budget)
        img_periods = []
        for q in periods:
            w = [0] * a.rows
            for (i, _), jstar in zip(select_rows, sigma):
                w[i] = sum(q[m] * c.periods[m][jstar] for m in range(k))
            img_periods.append(tuple(w))
        for t in bases:
            base_vec = [const_rows.get(i) for i in range(a.rows)]
            for (i, _), jstar in zip(select_rows, sigma):
                shift = sum(t[m] * c.periods[m][jstar] for m in range(k))
                base_vec[i] = term_val[i][jstar] + shift
            out.append(linear_set(tuple(base_vec), img_periods))
    return out


def direct_image(a: TropMatrix, gens: GeneratorSet,
                 budget: int = diophantine.DEFAULT_NODE_BUDGET) -> GeneratorSet:
    """Semilinear generating set of A(span G) = span A(G).

    Per linear component, the rows of the image are maxima of finitely
    many affine terms in the multiplicities; on the region where one
    argmax selection wins (a linear-inequality region over the naturals,
    hence semilinear) the image is affine, so it maps the region's
    semilinear decomposition to linear sets.  Enumerating selections is
    exponential in the number of ambiguous output rows.
    """
    if a.flavor != gens.flavor:
        raise FlavorError("matrix and generators have different flavors")
    if a.cols != gens.dim:
        raise ShapeError("matrix width does not match generator dimension")
    if gens.flavor == MINPLUS:
        img = direct_image(a.dualize(), _dual_generators(gens), budget)
        return _dual_generators(img)
    if gens.is_finite:
        comps = [linear_set(mat_vec(a, g), ()) for g in gens.vectors]
        return semilinear_gens(canonical(comps, dim=a.rows), MAXPLUS)
    comps = []
    for c in gens.sl.components:
        comps.extend(_image_of_component(a, c, budget))
    return semilinear_gens(canonical(comps, dim=a.rows), MAXPLUS)


# ---------------------------------------------------------------------------
# decision oracles for inverse image, residual set, orthogonal, transpose
# ---------------------------------------------------------------------------

def inverse_image_member(a: TropMatrix, zset: GeneratorSet, x: Sequence[Scalar],
                         budget: int = diophantine.DEFAULT_NODE_BUDGET):
    """Is A(x) in span Z?  True / False / BOUND_EXHAUSTED."""
    if a.cols != len(x):
        raise ShapeError("matrix width does not match vector")
    if a.rows != zset.dim:
        raise ShapeError("matrix height does not match target dimension")
    ax = mat_vec(a, tuple(x))
    res = span_member_semilinear(zset, ax, budget)
    if res is BOUND_EXHAUSTED:
        return BOUND_EXHAUSTED
    return res is not None


def _difference_feasible(n_vars: int, edges) -> bool:
    """Feasibility of a difference constraint system x_u - x_v <= w via
    Bellman-Ford; node 0 is the constant zero."""
    dist = [0] * (n_vars + 1)
    for _ in range(n_vars + 1):
        changed = False
        for u, v, w in edges:
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            return True
    return False


def minus_member(xset: GeneratorSet, yset: GeneratorSet, u: Sequence[Scalar],
                 budget: int = 200_000):
    """Does some y in span Y put u (+) y inside span X?

    Complete case analysis over (i) which generators take a finite scalar
    and (ii) which term attains each coordinate on both sides of
    u (+) y = x; each case is a difference-constraint system.  The case
    count is capped by ``budget``; a semilinear X is unfolded to a finite
    subfamily first, which can only turn a definite "no" into
    BOUND_EXHAUSTED, never flip an answer.
    """
    if not yset.is_finite:
        raise ValueError("minus_member requires a finite family Y")
    if xset.dim != yset.dim or len(u) != xset.dim:
        raise ShapeError("dimension mismatch")
    if xset.flavor != yset.flavor:
        raise FlavorError("flavor mismatch")
    if xset.flavor == MINPLUS:
        return minus_member(_dual_generators(xset), _dual_generators(yset),
                            _dual_vec(u), budget)
    u = tuple(u)
    n = xset.dim

    if xset.is_finite:
        xgens = list(xset.vectors)
        truncated = False
    else:
        from .semilinear import enumerate_points
        depth = 3
        xgens = sorted(set(enumerate_points(xset.sl, depth)))
        truncated = any(c.periods for c in xset.sl.components)

    ygens = list(yset.vectors)
    counter = [0]

    for vsub in _subsets(len(xgens)):
        xs = [xgens[a] for a in vsub]
        for usub in _subsets(len(ygens)):
            ys = [ygens[j] for j in usub]
            counter[0] += 1
            if counter[0] > budget:
                return BOUND_EXHAUSTED
            lhs_pat = _side_pattern(u, ys)
            rhs_pat = _side_pattern(None, xs, dim=n)
            if lhs_pat != rhs_pat:
                continue
            fin = [i for i, p in enumerate(lhs_pat) if p == 0]
            got = _minus_case(u, ys, xs, fin, budget, counter)
            if got is BOUND_EXHAUSTED:
                return BOUND_EXHAUSTED
            if got:
                return True
    return BOUND_EXHAUSTED if truncated else False


def _subsets(n):
    idx = list(range(n))
    for r in range(n + 1):
        yield from itertools.combinations(idx, r)


def _side_pattern(const, gens, dim=None):
    if dim is None:
        dim = len(const)
    out = []
    for i in range(dim):
        vals = [g[i] for g in gens]
        if const is not None:
            vals.append(const[i])
        if any(v is POS_INF for v in vals):
            out.append(POS_INF)
        elif any(is_finite(v) for v in vals):
            out.append(0)
        else:
            out.append(NEG_INF)
    return tuple(out)


def _minus_case(u, ys, xs, fin, budget, counter):
    """One support case: enumerate per-coordinate attainers, then settle
    each assignment by difference constraints.

    Variables: mu_j (scalars of ys) then lam_a (scalars of xs); node 0 is
    the constant.  An attainer choice encodes x_i = attainer value; all
    other terms are forced below it.
    """
    q, m = len(ys), len(xs)
    lhs_choices = []
    rhs_choices = []
    for i in fin:
        lhs = [("u", None)] if is_finite(u[i]) else []
        lhs += [("y", j) for j in range(q) if is_finite(ys[j][i])]
        rhs = [a for a in range(m) if is_finite(xs[a][i])]
        if not lhs or not rhs:
            return False
        lhs_choices.append(lhs)
        rhs_choices.append(rhs)

    for lhs_pick in itertools.product(*lhs_choices):
        for rhs_pick in itertools.product(*rhs_choices):
            counter[0] += 1
            if counter[0] > budget:
                return BOUND_EXHAUSTED
            # var indexing: 1..q = mu, q+1..q+m = lam, 0 = const
            edges = []
            for pos, i in enumerate(fin):
                skind, sj = lhs_pick[pos]
                ta = rhs_pick[pos]
                lam_node = 1 + q + ta
                lam_off = xs[ta][i]
                if skind == "u":
                    # lam_ta + xs[ta][i] = u_i
                    edges.append((lam_node, 0, u[i] - lam_off))
                    edges.append((0, lam_node, lam_off - u[i]))
                else:
                    mu_node = 1 + sj
                    off = ys[sj][i]
                    # lam_ta + lam_off = mu_sj + off
                    edges.append((lam_node, mu_node, off - lam_off))
                    edges.append((mu_node, lam_node, lam_off - off))

                def below(node, offset, skind=skind, sj=sj, i=i):
                    # node + offset <= the attained value at coordinate i
                    if skind == "u":
                        edges.append((node, 0, u[i] - offset))
                    else:
                        edges.append((node, 1 + sj, ys[sj][i] - offset))

                if skind != "u" and is_finite(u[i]):
                    # u_i <= mu_sj + ys[sj][i]
                    edges.append((0, 1 + sj, ys[sj][i] - u[i]))
                for j in range(q):
                    if is_finite(ys[j][i]) and (skind, sj) != ("y", j):
                        below(1 + j, ys[j][i])
                for a in range(m):
                    if is_finite(xs[a][i]) and a != ta:
                        below(1 + q + a, xs[a][i])
            if _difference_feasible(q + m, edges):
                return True
    return False


def ortho_member(pairs: GeneratorSet, x: Sequence[Scalar]) -> bool:
    """Does x satisfy a.x = b.x for every generating pair (a,b)?

    Checking the generators suffices: the relation is stable under sums
    and scalings of pairs.
    """
    if not pairs.is_finite:
        raise ValueError("ortho_member expects a finite family of pairs")
    if pairs.dim != 2 * len(x):
        raise ShapeError("pair dimension must be twice the vector dimension")
    n = len(x)
    x = tuple(x)
    for w in pairs.vectors:
        if dot(w[:n], x, pairs.flavor) != dot(w[n:], x, pairs.flavor):
            return False
    return True


def transpose_member(xset: GeneratorSet, a: Sequence[Scalar],
                     b: Sequence[Scalar]) -> bool:
    """Does the pair (a,b) agree, as a linear form equation, on span X?"""
    if not xset.is_finite:
        raise ValueError("transpose_member expects a finite family")
    if len(a) != xset.dim or len(b) != xset.dim:
        raise ShapeError("form dimensions do not match generators")
    a, b = tuple(a), tuple(b)
    return all(dot(a, g, xset.flavor) == dot(b, g, xset.flavor)
               for g in xset.vectors)
