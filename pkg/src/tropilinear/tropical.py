"""Exact scalar and matrix arithmetic over the max-plus and min-plus semirings.

Scalars live in Z extended with two signed infinities.  Finite values are
plain Python ints (arbitrary precision), the infinities are the module
singletons ``NEG_INF`` and ``POS_INF``.  In the max-plus flavor the zero
element is -inf and it absorbs under the product, including the otherwise
ambiguous combination (-inf) + (+inf) = -inf.  The min-plus flavor is the
order dual (negate and swap infinities) and shares the same code paths.

All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

MAXPLUS = "maxplus"
MINPLUS = "minplus"


class TropilinearError(Exception):
    """Base class for errors raised by this package."""


class ShapeError(TropilinearError, ValueError):
    """Dimension or shape mismatch between operands."""


class FlavorError(TropilinearError, ValueError):
    """Max-plus and min-plus operands were mixed."""


class FormatError(TropilinearError, ValueError):
    """Malformed text input (matrix, vector, set or system files)."""


class BudgetExceeded(TropilinearError):
    """A bounded search ran out of its configured budget."""


class _Infinite:
    """Signed infinity, totally ordered against ints and its twin."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        object.__setattr__(self, "sign", sign)

    def __setattr__(self, name, value):
        raise AttributeError("infinities are immutable")

    def __lt__(self, other):
        if isinstance(other, _Infinite):
            return self.sign < other.sign
        if isinstance(other, int):
            return self.sign < 0
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, _Infinite):
            return self.sign <= other.sign
        if isinstance(other, int):
            return self.sign < 0
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _Infinite):
            return self.sign > other.sign
        if isinstance(other, int):
            return self.sign > 0
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, _Infinite):
            return self.sign >= other.sign
        if isinstance(other, int):
            return self.sign > 0
        return NotImplemented

    def __neg__(self):
        return NEG_INF if self.sign > 0 else POS_INF

    def __hash__(self):
        return hash(("tropilinear.inf", self.sign))

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (_infinity_from_sign, (self.sign,))


def _infinity_from_sign(sign: int) -> "_Infinite":
    return POS_INF if sign > 0 else NEG_INF


NEG_INF = _Infinite(-1)
POS_INF = _Infinite(+1)

Scalar = Union[int, _Infinite]
Vec = tuple  # tuple of Scalar


def is_finite(x: Scalar) -> bool:
    return isinstance(x, int)


def zero_of(flavor: str) -> Scalar:
    """Additive zero: -inf for max-plus, +inf for min-plus."""
    return NEG_INF if flavor == MAXPLUS else POS_INF


def tadd(a: Scalar, b: Scalar, flavor: str = MAXPLUS) -> Scalar:
    """Semiring addition: max (min-plus: min)."""
    if flavor == MAXPLUS:
        return a if a >= b else b
    return a if a <= b else b


def tmul(a: Scalar, b: Scalar, flavor: str = MAXPLUS) -> Scalar:
    """Semiring product: integer addition with absorbing zero.

    In max-plus, -inf absorbs everything (so (-inf)(+inf) = -inf); dually
    +inf absorbs in min-plus.
    """
    if flavor == MAXPLUS:
        if a is NEG_INF or b is NEG_INF:
            return NEG_INF
        if a is POS_INF or b is POS_INF:
            return POS_INF
        return a + b
    if a is POS_INF or b is POS_INF:
        return POS_INF
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


def tquot(b: Scalar, a: Scalar) -> Scalar:
    """Max-plus residuation quotient: the greatest x with a (x) <= b.

    The infinity rows of the table are the unique choice making the matrix
    residual the upper adjoint of left multiplication on the complete
    lattice of extended-integer vectors.
    """
    if a is NEG_INF:
        return POS_INF
    if b is POS_INF:
        return POS_INF
    if a is POS_INF:
        return NEG_INF
    if b is NEG_INF:
        return NEG_INF
    return b - a


def dual(x: Scalar) -> Scalar:
    """Order-dual of a scalar: negation, swapping the infinities."""
    return -x


def pattern(v: Sequence[Scalar]) -> Vec:
    """Coordinate-wise infinity pattern: finite entries map to 0.

    The map is idempotent: patterns are fixed points.
    """
    return tuple(x if isinstance(x, _Infinite) else 0 for x in v)


def vec_mul(u: Sequence[Scalar], v: Sequence[Scalar], flavor: str = MAXPLUS) -> Vec:
    """Entrywise semiring product (the monoid product of the free module)."""
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(tmul(a, b, flavor) for a, b in zip(u, v))


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar], flavor: str = MAXPLUS) -> Vec:
    """Entrywise semiring sum (max, or min in the min-plus flavor)."""
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(tadd(a, b, flavor) for a, b in zip(u, v))


def vec_scale(lam: Scalar, v: Sequence[Scalar], flavor: str = MAXPLUS) -> Vec:
    return tuple(tmul(lam, x, flavor) for x in v)


def vec_le(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    """Componentwise natural order (total order on each coordinate)."""
    return all(a <= b for a, b in zip(u, v))


def dot(a: Sequence[Scalar], x: Sequence[Scalar], flavor: str = MAXPLUS) -> Scalar:
    """Semiring dot product; over max-plus this is max_i (a_i + x_i)."""
    if len(a) != len(x):
        raise ShapeError(f"vector lengths differ: {len(a)} vs {len(x)}")
    acc = zero_of(flavor)
    for ai, xi in zip(a, x):
        acc = tadd(acc, tmul(ai, xi, flavor), flavor)
    return acc


@dataclass(frozen=True)
class TropMatrix:
    """Dense rectangular matrix over the extended integers.

    ``data`` is a tuple of row tuples.  Operations require matching
    flavors; min-plus arithmetic is delegated to max-plus by dualization.
    """

    rows: int
    cols: int
    data: tuple
    flavor: str = MAXPLUS

    def __post_init__(self):
        if self.flavor not in (MAXPLUS, MINPLUS):
            raise FlavorError(f"unknown flavor {self.flavor!r}")
        if len(self.data) != self.rows:
            raise ShapeError("row count does not match data")
        for r in self.data:
            if len(r) != self.cols:
                raise ShapeError("ragged rows in matrix data")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]], flavor: str = MAXPLUS) -> "TropMatrix":
        data = tuple(tuple(r) for r in rows)
        n = len(data)
        m = len(data[0]) if data else 0
        return cls(n, m, data, flavor)

    @classmethod
    def identity(cls, n: int, flavor: str = MAXPLUS) -> "TropMatrix":
        eps = zero_of(flavor)
        return cls(n, n, tuple(tuple(0 if i == j else eps for j in range(n)) for i in range(n)), flavor)

    @classmethod
    def zeros(cls, rows: int, cols: int, flavor: str = MAXPLUS) -> "TropMatrix":
        """All-epsilon matrix (the additive zero of the matrix semimodule)."""
        eps = zero_of(flavor)
        return cls(rows, cols, tuple(tuple(eps for _ in range(cols)) for _ in range(rows)), flavor)

    def row(self, i: int) -> Vec:
        return self.data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "TropMatrix":
        return TropMatrix(self.cols, self.rows,
                          tuple(tuple(self.data[i][j] for i in range(self.rows))
                                for j in range(self.cols)),
                          self.flavor)

    def dualize(self) -> "TropMatrix":
        """Entrywise order-dual with the opposite flavor tag."""
        other = MINPLUS if self.flavor == MAXPLUS else MAXPLUS
        return TropMatrix(self.rows, self.cols,
                          tuple(tuple(-x for x in r) for r in self.data), other)

    def hstack(self, other: "TropMatrix") -> "TropMatrix":
        if other.rows != self.rows:
            raise ShapeError("hstack: row counts differ")
        if other.flavor != self.flavor:
            raise FlavorError("hstack: flavors differ")
        return TropMatrix(self.rows, self.cols + other.cols,
                          tuple(a + b for a, b in zip(self.data, other.data)), self.flavor)

    def vstack(self, other: "TropMatrix") -> "TropMatrix":
        if other.cols != self.cols:
            raise ShapeError("vstack: column counts differ")
        if other.flavor != self.flavor:
            raise FlavorError("vstack: flavors differ")
        return TropMatrix(self.rows + other.rows, self.cols,
                          self.data + other.data, self.flavor)

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        return mat_mul(self, other)


def mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Semiring matrix product, C_ij = sum_k A_ik B_kj."""
    if a.flavor != b.flavor:
        raise FlavorError(f"cannot multiply {a.flavor} by {b.flavor}")
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    if a.flavor == MINPLUS:
        return mat_mul(a.dualize(), b.dualize()).dualize()
    bt = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        arow = a.data[i]
        orow = []
        for bcol in bt:
            acc = NEG_INF
            for x, y in zip(arow, bcol):
                if x is NEG_INF or y is NEG_INF:
                    continue
                if x is POS_INF or y is POS_INF:
                    acc = POS_INF
                    continue
                s = x + y
                if acc is NEG_INF or s > acc:
                    acc = s
            orow.append(acc)
        out.append(tuple(orow))
    return TropMatrix(a.rows, b.cols, tuple(out), a.flavor)


def _max_comb(row: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = NEG_INF
    for x, y in zip(row, v):
        if x is NEG_INF or y is NEG_INF:
            continue
        if x is POS_INF or y is POS_INF:
            acc = POS_INF
            continue
        s = x + y
        if acc is NEG_INF or s > acc:
            acc = s
    return acc


def mat_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Entrywise semiring sum of two matrices."""
    if a.flavor != b.flavor:
        raise FlavorError(f"cannot add {a.flavor} to {b.flavor}")
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeError("matrix shapes differ")
    return TropMatrix(a.rows, a.cols,
                      tuple(vec_add(ra, rb, a.flavor)
                            for ra, rb in zip(a.data, b.data)), a.flavor)


def mat_vec(a: TropMatrix, v: Sequence[Scalar]) -> Vec:
    """Matrix-vector product as a plain tuple."""
    if len(v) != a.cols:
        raise ShapeError(f"matrix has {a.cols} columns, vector has {len(v)}")
    if a.flavor == MINPLUS:
        return tuple(-x for x in mat_vec(a.dualize(), tuple(-y for y in v)))
    return tuple(_max_comb(row, v) for row in a.data)


def vec_mat(v: Sequence[Scalar], a: TropMatrix) -> Vec:
    """Row-vector times matrix, as a plain tuple."""
    if len(v) != a.rows:
        raise ShapeError(f"matrix has {a.rows} rows, vector has {len(v)}")
    if a.flavor == MINPLUS:
        return tuple(-x for x in vec_mat(tuple(-y for y in v), a.dualize()))
    return tuple(_max_comb(v, a.col(j)) for j in range(a.cols))


def residual_left(a: TropMatrix, b: Sequence[Scalar]) -> Vec:
    """Greatest x with A (x) <= b componentwise (max-plus residuation).

    x_j = min_i (b_i / A_ij) with the quotient conventions of ``tquot``.
    Deciding solvability of A x = b reduces to checking the residual:
    the equation has a solution iff A (residual) = b.
    """
    if a.flavor != MAXPLUS:
        raise FlavorError("residuation is defined on the max-plus flavor")
    if len(b) != a.rows:
        raise ShapeError(f"matrix has {a.rows} rows, target has {len(b)}")
    out = []
    for j in range(a.cols):
        acc = POS_INF
        for i in range(a.rows):
            q = tquot(b[i], a.data[i][j])
            if q < acc:
                acc = q
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# text format:  "maxplus R C" or "minplus R C" header, then R rows of C tokens
# ---------------------------------------------------------------------------

def format_scalar(x: Scalar) -> str:
    return repr(x) if isinstance(x, _Infinite) else str(x)


def parse_scalar(tok: str) -> Scalar:
    if tok == "-inf":
        return NEG_INF
    if tok == "+inf":
        return POS_INF
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"bad scalar token {tok!r}") from None


def format_vector(v: Sequence[Scalar]) -> str:
    return " ".join(format_scalar(x) for x in v)


def parse_vector(text: str) -> Vec:
    toks = text.split()
    if not toks:
        raise FormatError("empty vector")
    return tuple(parse_scalar(t) for t in toks)


def format_matrix(m: TropMatrix) -> str:
    lines = [f"{m.flavor} {m.rows} {m.cols}"]
    lines.extend(format_vector(r) for r in m.data)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> TropMatrix:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty matrix text")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in (MAXPLUS, MINPLUS):
        raise FormatError(f"bad matrix header {lines[0]!r}")
    try:
        rows, cols = int(head[1]), int(head[2])
    except ValueError:
        raise FormatError(f"bad matrix header {lines[0]!r}") from None
    if rows < 0 or cols < 0:
        raise FormatError("negative matrix dimensions")
    if len(lines) != 1 + rows:
        raise FormatError(f"expected {rows} matrix rows, found {len(lines) - 1}")
    data = []
    for ln in lines[1:]:
        row = parse_vector(ln)
        if len(row) != cols:
            raise FormatError(f"expected {cols} entries per row, got {len(row)}")
        data.append(row)
    return TropMatrix(rows, cols, tuple(data), head[0])
