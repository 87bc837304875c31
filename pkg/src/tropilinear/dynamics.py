"""Reachability and observability of max-plus linear systems.

The dater dynamics x(k) = A x(k-1) (+) B u(k), y(k) = C x(k) generate the
finite-horizon reachability matrix (B, AB, ..., A^{k-1}B) and its infinite
union.  Powers of a max-plus matrix are ultimately periodic coordinate by
coordinate, so each trajectory A^k b eventually repeats with per-residue
integer increments; detection of that behaviour turns the full reachable
family into a semilinear set: finitely many transient columns plus one
periodic ray per residue class.

Detection is a semi-decision: a candidate (period, transient) pair is
accepted only after a configurable confirmation window, and failure to
find one inside the bounds raises ``DetectionFailed`` rather than emitting
an unverified representation.

The observability side reuses the same machinery on the transposed pair;
the resulting finite row block stands in for the infinite stack of rows
when comparing or maximizing over congruence classes.  That reduction
relies on the detected increment structure continuing beyond the verified
window.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional, Sequence

from .semilinear import SemilinearSet, canonical, linear_set
from .spans import GeneratorSet, semilinear_gens
from .tropical import (
    MAXPLUS,
    NEG_INF,
    POS_INF,
    FormatError,
    Scalar,
    ShapeError,
    TropilinearError,
    TropMatrix,
    Vec,
    format_matrix,
    is_finite,
    mat_vec,
    parse_matrix,
    pattern,
    residual_left,
    vec_add,
)

DEFAULT_WINDOW = 3
DEFAULT_MAX_PERIOD = 24
TRANSIENT_FACTOR = 200


class DetectionFailed(TropilinearError):
    """No (period, transient) pair confirmed within the search bounds."""


def _check_no_posinf(m: TropMatrix, name: str):
    for row in m.data:
        if POS_INF in row:
            raise ValueError(f"{name} must not contain +inf entries")


@dataclass(frozen=True)
class LtiSystem:
    """Max-plus system matrices (A, B, C); C may be absent.

    Entries live in Z with -inf; +inf is rejected (dater interpretations
    have no +inf events, and it keeps the pattern logic two-valued).
    """

    a: TropMatrix
    b: TropMatrix
    c: Optional[TropMatrix] = None

    def __post_init__(self):
        for m in (self.a, self.b) + ((self.c,) if self.c is not None else ()):
            if m.flavor != MAXPLUS:
                raise ShapeError("system matrices must be max-plus")
        if self.a.rows != self.a.cols:
            raise ShapeError("A must be square")
        if self.b.rows != self.a.rows:
            raise ShapeError("B must have as many rows as A")
        if self.c is not None and self.c.cols != self.a.rows:
            raise ShapeError("C must have as many columns as A")
        _check_no_posinf(self.a, "A")
        _check_no_posinf(self.b, "B")
        if self.c is not None:
            _check_no_posinf(self.c, "C")

    @property
    def n(self) -> int:
        return self.a.rows

    @property
    def p(self) -> int:
        return self.b.cols

    @property
    def q(self) -> int:
        return self.c.rows if self.c is not None else 0


@dataclass(frozen=True)
class ColumnCyclicity:
    """Confirmed eventual periodicity of one iterated column.

    For all checked k in [transient, transient + window*period]:
    column(k + period) = increments[k mod period] (+) column(k), with the
    infinity pattern constant per residue class.
    """

    period: int
    transient: int
    increments: tuple  # by residue class k mod period
    patterns: tuple    # stabilized pattern by residue class
    window: int


@dataclass(frozen=True)
class CyclicityCertificate:
    """Join of the per-column detections backing a reach_omega answer."""

    period: int
    transient: int
    window: int
    columns: tuple  # ColumnCyclicity per tracked column


@dataclass(frozen=True)
class CongruenceBasis:
    """Finite stand-in for the infinite observability row stack.

    ``block`` holds the rows C, CA, ..., CA^{transient+period-1}; beyond
    them every row is an increment-shifted copy per the certificate, so
    queries compare or residuate against the block only.
    """

    block: TropMatrix
    period: int
    transient: int
    window: int
    rows: tuple  # ColumnCyclicity per row of C


def reach_k(sys: LtiSystem, k: int) -> TropMatrix:
    """Reachability matrix (B, AB, ..., A^{k-1}B); k = 0 gives n x 0."""
    if k < 0:
        raise ValueError("horizon must be nonnegative")
    blocks = []
    cur = sys.b
    for _ in range(k):
        blocks.append(cur)
        cur = sys.a @ cur
    out = TropMatrix(sys.n, 0, tuple(() for _ in range(sys.n)), MAXPLUS)
    for blk in blocks:
        out = out.hstack(blk)
    return out


def obs_k(sys: LtiSystem, k: int) -> TropMatrix:
    """Observability matrix stacking C, CA, ..., CA^{k-1}."""
    if sys.c is None:
        raise ValueError("system has no observation matrix")
    if k < 1:
        raise ValueError("horizon must be at least 1")
    out = sys.c
    cur = sys.c
    for _ in range(k - 1):
        cur = cur @ sys.a
        out = out.vstack(cur)
    return out


def _detect_column(a: TropMatrix, start: Vec, window: int, max_period: int,
                   max_transient: int) -> tuple:
    """Smallest confirmed (period, transient) for the orbit of ``start``.

    Returns (ColumnCyclicity, trajectory).  The period is minimized first,
    then the transient.
    """
    traj = [tuple(start)]

    def col(k: int) -> Vec:
        while len(traj) <= k:
            traj.append(mat_vec(a, traj[-1]))
        return traj[k]

    for c in range(1, max_period + 1):
        for n0 in range(0, max_transient + 1):
            deltas: dict = {}
            pats: dict = {}
            ok = True
            for k in range(n0, n0 + window * c + 1):
                x, xc = col(k), col(k + c)
                if pattern(x) != pattern(xc):
                    ok = False
                    break
                delta = tuple((b - a_) if is_finite(a_) else 0
                              for a_, b in zip(x, xc))
                res = k % c
                if deltas.setdefault(res, delta) != delta:
                    ok = False
                    break
                if pats.setdefault(res, pattern(x)) != pattern(x):
                    ok = False
                    break
            if ok:
                cert = ColumnCyclicity(
                    period=c,
                    transient=n0,
                    increments=tuple(deltas[l] for l in sorted(deltas)),
                    patterns=tuple(pats[l] for l in sorted(pats)),
                    window=window,
                )
                return cert, traj
    raise DetectionFailed(
        f"no (period <= {max_period}, transient <= {max_transient}) "
        f"confirmed over window {window}")


def _column_components(cert: ColumnCyclicity, traj: list) -> list:
    comps = [linear_set(traj[k], ()) for k in range(cert.transient)]
    for l in range(cert.period):
        k = cert.transient + l
        delta = cert.increments[k % cert.period]
        comps.append(linear_set(traj[k], [delta] if any(delta) else []))
    return comps


def reach_omega(sys: LtiSystem, window: int = DEFAULT_WINDOW,
                max_period: int = DEFAULT_MAX_PERIOD,
                max_transient: Optional[int] = None):
    """Semilinear generating set of the full reachable family, with the
    cyclicity certificate that justifies it.

    Each column of B is tracked independently; the emitted set unions the
    transient columns (one-point components) with one ray per residue
    class.  Raises DetectionFailed instead of guessing when the bounds
    are exhausted.
    """
    if window < 1 or max_period < 1:
        raise ValueError("window and max_period must be at least 1")
    if max_transient is None:
        max_transient = TRANSIENT_FACTOR * sys.n
    comps = []
    cols = []
    for j in range(sys.p):
        cert, traj = _detect_column(sys.a, sys.b.col(j), window,
                                    max_period, max_transient)
        cols.append(cert)
        comps.extend(_column_components(cert, traj))
    certificate = CyclicityCertificate(
        period=lcm(*(c.period for c in cols)) if cols else 1,
        transient=max((c.transient for c in cols), default=0),
        window=window,
        columns=tuple(cols),
    )
    gens = semilinear_gens(canonical(comps, dim=sys.n), MAXPLUS)
    return gens, certificate


def obs_omega(sys: LtiSystem, window: int = DEFAULT_WINDOW,
              max_period: int = DEFAULT_MAX_PERIOD,
              max_transient: Optional[int] = None) -> CongruenceBasis:
    """Finite congruence basis for the infinite observability stack.

    Runs the reachability detection on the transposed pair (A^T, C^T);
    the rows of the observability matrix are the tracked columns.
    """
    if sys.c is None:
        raise ValueError("system has no observation matrix")
    if max_transient is None:
        max_transient = TRANSIENT_FACTOR * sys.n
    at = sys.a.transpose()
    certs = []
    for r in range(sys.q):
        cert, _ = _detect_column(at, sys.c.row(r), window,
                                 max_period, max_transient)
        certs.append(cert)
    period = lcm(*(c.period for c in certs))
    transient = max(c.transient for c in certs)
    block = obs_k(sys, transient + period)
    return CongruenceBasis(block=block, period=period, transient=transient,
                           window=window, rows=tuple(certs))


def congruent(basis: CongruenceBasis, xi: Sequence[Scalar],
              xi2: Sequence[Scalar]) -> bool:
    """Do the two states produce identical outputs at every horizon?

    Compares images under the transient-plus-one-period block; equality
    there extends to the increment-shifted rows the certificate verified.
    """
    return mat_vec(basis.block, tuple(xi)) == mat_vec(basis.block, tuple(xi2))


def class_max(basis: CongruenceBasis, xi: Sequence[Scalar]) -> Vec:
    """Greatest state indistinguishable from xi: the residual of its own
    observation image."""
    image = mat_vec(basis.block, tuple(xi))
    return residual_left(basis.block, image)


def control_solve(sys: LtiSystem, k: int, z: Sequence[Scalar]) -> Optional[Vec]:
    """Control sequence steering epsilon to z in k steps, or None.

    Returns the stacked vector (u(k), ..., u(1)) matching the column
    blocks of the reachability matrix; the greatest subsolution is exact
    here, so residuation plus one re-multiplication decides solvability.
    """
    if k < 1:
        raise ValueError("horizon must be at least 1")
    z = tuple(z)
    rk = reach_k(sys, k)
    u = residual_left(rk, z)
    return u if mat_vec(rk, u) == z else None


def nondecreasing_augment(sys: LtiSystem) -> LtiSystem:
    """Augmented system whose inputs are replaced by their running maxima.

    State (x, v) with v(k) = v(k-1) (+) u(k) and x(k) = A x(k-1) (+) B v(k);
    feeding arbitrary u through it realizes exactly the nondecreasing
    control sequences of the original system.
    """
    n, p = sys.n, sys.p
    eps = NEG_INF
    a_rows = []
    for i in range(n):
        a_rows.append(tuple(sys.a.data[i]) + tuple(sys.b.data[i]))
    for i in range(p):
        a_rows.append(tuple(eps for _ in range(n))
                      + tuple(0 if i == j else eps for j in range(p)))
    b_rows = [tuple(sys.b.data[i]) for i in range(n)]
    b_rows += [tuple(0 if i == j else eps for j in range(p)) for i in range(p)]
    c = None
    if sys.c is not None:
        c = TropMatrix.from_rows(
            [tuple(row) + tuple(eps for _ in range(p)) for row in sys.c.data])
    return LtiSystem(TropMatrix.from_rows(a_rows),
                     TropMatrix.from_rows(b_rows), c)


def simulate(sys: LtiSystem, inputs: Sequence[Sequence[Scalar]],
             x0: Optional[Sequence[Scalar]] = None) -> list:
    """States x(1..K) under the given input columns; x(0) defaults to
    epsilon."""
    x = tuple(x0) if x0 is not None else (NEG_INF,) * sys.n
    if len(x) != sys.n:
        raise ShapeError("initial state dimension mismatch")
    out = []
    for u in inputs:
        u = tuple(u)
        if len(u) != sys.p:
            raise ShapeError("input dimension mismatch")
        x = vec_add(mat_vec(sys.a, x), mat_vec(sys.b, u))
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# system file: blocks "A:", "B:", optional "C:", each a matrix in text form
# ---------------------------------------------------------------------------

def format_system(sys: LtiSystem) -> str:
    parts = ["A:\n" + format_matrix(sys.a), "B:\n" + format_matrix(sys.b)]
    if sys.c is not None:
        parts.append("C:\n" + format_matrix(sys.c))
    return "".join(parts)


def parse_system(text: str) -> LtiSystem:
    sections: dict = {}
    current = None
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln in ("A:", "B:", "C:"):
            current = ln[0]
            if current in sections:
                raise FormatError(f"duplicate section {ln}")
            sections[current] = []
        elif current is None:
            raise FormatError(f"content before any section label: {ln!r}")
        else:
            sections[current].append(ln)
    if "A" not in sections or "B" not in sections:
        raise FormatError("system file needs A: and B: sections")
    mats = {k: parse_matrix("\n".join(v)) for k, v in sections.items()}
    return LtiSystem(mats["A"], mats["B"], mats.get("C"))
