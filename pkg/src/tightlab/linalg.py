"""Dense exact linear algebra over a :class:`~tightlab.scalars.FieldSpec`.

Vectors are plain tuples of scalars.  Row reduction always pivots on the
first nonzero entry in column order, so echelon forms and nullspace bases
are reproducible.  A nullspace basis vector for free column ``f`` carries
``-1`` in position ``f`` and the reduced pivot-row entries elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import FieldMismatch
from .scalars import FieldSpec, Scalar

Vector = Tuple[Scalar, ...]


class Matrix:
    """Immutable row-major matrix over one field."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: FieldSpec, rows: Iterable[Sequence], ncols: Optional[int] = None):
        entries = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not entries:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(entries[0])
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(entries))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, ((one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls(field, ((field.zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(field, (tuple(col[i] for col in columns) for i in range(nrows)), len(columns))

    @classmethod
    def column_vector(cls, field: FieldSpec, v: Sequence) -> "Matrix":
        return cls(field, ((x,) for x in v), 1)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.field, self.entries, self.ncols)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        zero = self.field.zero
        out = []
        for r in self.entries:
            acc = zero
            for a, x in zip(r, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} @ {other.field.name}")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return Matrix.from_columns(self.field, [self.apply(c) for c in cols], self.nrows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.field, (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)), self.ncols)

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.field, (tuple(c * a for a in r) for r in self.entries), self.ncols)

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.entries)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


def rref(rows: Sequence[Sequence[Scalar]], ncols: int, field: FieldSpec) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = [list(field(x) for x in r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        for i in range(r, len(m)):
            if m[i][c]:
                break
        else:
            continue
        m[r], m[i] = m[i], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _nullspace_from_rref(reduced, pivots, ncols, field) -> List[Vector]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [field.zero] * ncols
        v[f] = -field.one
        for row, p in zip(reduced, pivots):
            v[p] = row[f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class RankNullspace:
    rank: int
    nullspace_basis: Tuple[Vector, ...]


def rank_nullspace(A: Matrix) -> RankNullspace:
    reduced, pivots = rref(A.entries, A.ncols, A.field)
    return RankNullspace(len(pivots), tuple(_nullspace_from_rref(reduced, pivots, A.ncols, A.field)))


def rank(A: Matrix) -> int:
    return len(rref(A.entries, A.ncols, A.field)[1])


def nullspace(A: Matrix) -> Tuple[Vector, ...]:
    return rank_nullspace(A).nullspace_basis


@dataclass(frozen=True)
class LinearSolution:
    solution: Vector
    nullspace_basis: Tuple[Vector, ...]


def solve_linear(A: Matrix, b: Sequence[Scalar]) -> Optional[LinearSolution]:
    """Solve ``A x = b``; None when ``b`` is outside the column space.

    ``b`` may be a sequence of scalars or a one-column :class:`Matrix`.
    """
    if isinstance(b, Matrix):
        if b.ncols != 1:
            raise ValueError("right-hand side must have one column")
        if b.field != A.field:
            raise FieldMismatch(f"{A.field.name} system with {b.field.name} rhs")
        b = b.column(0)
    if len(b) != A.nrows:
        raise ValueError(f"rhs length {len(b)} for {A.nrows} equations")
    field = A.field
    rhs = [field(x) for x in b]
    aug = [list(r) + [x] for r, x in zip(A.entries, rhs)]
    reduced, pivots = rref(aug, A.ncols + 1, field)
    if pivots and pivots[-1] == A.ncols:
        return None
    x = [field.zero] * A.ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[A.ncols]
    stripped = [row[: A.ncols] for row in reduced]
    return LinearSolution(tuple(x), tuple(_nullspace_from_rref(stripped, pivots, A.ncols, field)))


def echelon_basis(vectors: Iterable[Sequence[Scalar]], ncols: int, field: FieldSpec) -> Tuple[Vector, ...]:
    """Canonical basis (nonzero RREF rows) of the span of ``vectors``."""
    reduced, _ = rref(list(vectors), ncols, field)
    return tuple(tuple(r) for r in reduced)


def annihilator(basis: Sequence[Sequence[Scalar]], ncols: int, field: FieldSpec) -> Tuple[Vector, ...]:
    """Functionals (as row vectors) whose common kernel is exactly span(basis)."""
    if not basis:
        return tuple(tuple(field.one if i == j else field.zero for j in range(ncols)) for i in range(ncols))
    return nullspace(Matrix(field, basis, ncols))


def dot(u: Sequence[Scalar], v: Sequence[Scalar], field: FieldSpec) -> Scalar:
    acc = field.zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def combine(coeffs: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]], ncols: int, field: FieldSpec) -> Vector:
    out = [field.zero] * ncols
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] = out[i] + c * x
    return tuple(out)


def normalize_leading(v: Sequence[Scalar]) -> Vector:
    """Scale a nonzero vector so its first nonzero entry is 1."""
    for x in v:
        if x:
            inv = 1 / x if not hasattr(x, "inverse") else x.inverse()
            return tuple(inv * y for y in v)
    raise ValueError("zero vector has no leading entry")
