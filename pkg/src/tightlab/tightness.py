"""Embeddings F^ <= M_n(G), corner blocks and (a-)tightness.

A model stores a k-basis of F^ as n x n grids whose entries are coordinate
vectors in G's basis.  The corner-block map ``M -> rows 1..a, columns a..n``
is k-linear on F^, so a-tightness is a rank computation: the map must hit
all ``a*b*dim_k G`` block coordinates, where ``b = n + 1 - a``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import StructureConstantAlgebra, Subspace, division_probe
from .errors import IndexOutOfRange, NotOneTight, ShapeMismatch, ValidationError
from .extension import ExtensionPresentation, phi_embed
from .linalg import Matrix, Vector, dot, echelon_basis, nullspace, rank, rref, solve_linear
from .scalars import Scalar

GGrid = Tuple[Tuple[Vector, ...], ...]


def grid_mul(G: StructureConstantAlgebra, X: GGrid, Y: GGrid) -> GGrid:
    n = len(X)
    zero = (G.field.zero,) * G.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = list(zero)
            for l in range(n):
                x, y = X[i][l], Y[l][j]
                if any(x) and any(y):
                    p = G.mul_coords(x, y)
                    acc = [a + b for a, b in zip(acc, p)]
            row.append(tuple(acc))
        out.append(tuple(row))
    return tuple(out)


def identity_grid(G: StructureConstantAlgebra, n: int) -> GGrid:
    zero = (G.field.zero,) * G.dim
    return tuple(tuple(G.unit if i == j else zero for j in range(n)) for i in range(n))


def matrix_unit(G: StructureConstantAlgebra, n: int, i: int, j: int) -> GGrid:
    """Standard matrix unit e_ij (0-indexed)."""
    zero = (G.field.zero,) * G.dim
    return tuple(tuple(G.unit if (r, c) == (i, j) else zero for c in range(n)) for r in range(n))


def flatten(grid) -> Vector:
    return tuple(x for row in grid for entry in row for x in entry)


def unflatten(G: StructureConstantAlgebra, n: int, vec: Sequence[Scalar]) -> GGrid:
    d = G.dim
    return tuple(tuple(tuple(vec[(i * n + j) * d:(i * n + j + 1) * d]) for j in range(n)) for i in range(n))


class EmbeddingModel:
    """A subring F^ of M_n(G), given by a k-basis, with the standard matrix units."""

    def __init__(
        self,
        G: StructureConstantAlgebra,
        n: int,
        image_basis: Sequence[Sequence[Sequence[Sequence]]],
        name: str = "model",
        check: bool = True,
        seed: int = 0,
    ):
        if n < 1:
            raise ValidationError("n must be at least 1")
        grids = []
        for t, grid in enumerate(image_basis):
            if len(grid) != n or any(len(row) != n for row in grid):
                raise ValidationError(f"image_basis[{t}] is not {n}x{n}")
            rows = []
            for row in grid:
                entries = []
                for entry in row:
                    if len(entry) != G.dim:
                        raise ValidationError(f"image_basis[{t}] has an entry with {len(entry)} coordinates, G has {G.dim}")
                    entries.append(tuple(G.field(x) for x in entry))
                rows.append(tuple(entries))
            grids.append(tuple(rows))
        self.G = G
        self.n = n
        self.image_basis: Tuple[GGrid, ...] = tuple(grids)
        self.name = name
        self.seed = seed
        self._block_maps: Dict[int, Matrix] = {}
        if len(echelon_basis([flatten(g) for g in grids], self.ambient_dim, G.field)) != len(grids):
            raise ValidationError("image_basis is linearly dependent over k")
        if check:
            self.validate()

    def __repr__(self):
        return f"EmbeddingModel({self.name!r}, n={self.n}, dim_k F^={self.dim}, dim_k G={self.G.dim})"

    @property
    def dim(self) -> int:
        return len(self.image_basis)

    @property
    def ambient_dim(self) -> int:
        return self.n * self.n * self.G.dim

    @cached_property
    def _coord_matrix(self) -> Matrix:
        return Matrix.from_columns(self.G.field, [flatten(g) for g in self.image_basis], self.ambient_dim)

    @cached_property
    def _left_inverse(self):
        # rows R where the coordinate matrix is invertible, and that square block's inverse
        f = self.G.field
        _, R = rref([flatten(g) for g in self.image_basis], self.ambient_dim, f)
        square = Matrix(f, [self._coord_matrix.entries[r] for r in R], self.dim)
        cols = [solve_linear(square, e).solution for e in Matrix.identity(f, self.dim).entries]
        return R, Matrix.from_columns(f, cols, self.dim)

    def coordinates(self, grid: GGrid) -> Optional[Vector]:
        """Coordinates of a grid in the image basis, None if it is not in F^."""
        if not self.image_basis:
            return None
        v = flatten(grid)
        R, inv = self._left_inverse
        coords = inv.apply([v[r] for r in R])
        return coords if self._coord_matrix.apply(coords) == tuple(v) else None

    def element(self, coords: Sequence[Scalar]) -> GGrid:
        return unflatten(self.G, self.n, self._coord_matrix.apply([self.G.field(c) for c in coords]))

    def image_subspace(self) -> Tuple[Vector, ...]:
        """Canonical echelon basis of F^ inside k^(n*n*dim G)."""
        return echelon_basis([flatten(g) for g in self.image_basis], self.ambient_dim, self.G.field)

    def closure_failures(self) -> List[str]:
        return list(self._closure_failures)

    @cached_property
    def _closure_failures(self) -> Tuple[str, ...]:
        problems = []
        if self.coordinates(identity_grid(self.G, self.n)) is None:
            problems.append("identity matrix not in the image")
        for s, X in enumerate(self.image_basis):
            for t, Y in enumerate(self.image_basis):
                if self.coordinates(grid_mul(self.G, X, Y)) is None:
                    problems.append(f"product of basis grids {s} and {t} leaves the image")
        return tuple(problems)

    def validate(self):
        problems = self.closure_failures()
        if problems:
            raise ValidationError(f"model {self.name!r}: {problems[0]}")
        verdict = division_probe(self.as_algebra, self.seed)
        if verdict.certified_not_division:
            raise ValidationError(
                f"model {self.name!r} is not a division subring: {verdict.element} * {verdict.certificate} = 0"
            )

    @cached_property
    def as_algebra(self) -> StructureConstantAlgebra:
        """F^ as a structure-constant algebra on the image basis."""
        if self.closure_failures():
            raise ValidationError(f"model {self.name!r} is not a unital subring")
        table = [[self.coordinates(grid_mul(self.G, X, Y)) for Y in self.image_basis] for X in self.image_basis]
        unit = self.coordinates(identity_grid(self.G, self.n))
        names = [f"m{t}" for t in range(self.dim)]
        return StructureConstantAlgebra(self.G.field, names, table, unit=unit, name=f"F^({self.name})")


@dataclass(frozen=True)
class CornerBlock:
    a: int
    b: int
    entries: Tuple[tuple, ...]


def corner_block(M, a: int) -> CornerBlock:
    """Rows 1..a and columns a..n (1-indexed) of an n x n grid."""
    n = len(M)
    if not 1 <= a <= n:
        raise IndexOutOfRange(f"a={a} outside 1..{n}")
    b = n + 1 - a
    return CornerBlock(a, b, tuple(tuple(M[i][a - 1:]) for i in range(a)))


def block_map(E: EmbeddingModel, a: int) -> Matrix:
    """k-matrix of F^ -> (a x b grids over G); column t is the flattened block of basis grid t."""
    if not 1 <= a <= E.n:
        raise IndexOutOfRange(f"a={a} outside 1..{E.n}")
    if a not in E._block_maps:
        cols = [flatten(corner_block(g, a).entries) for g in E.image_basis]
        b = E.n + 1 - a
        E._block_maps[a] = Matrix.from_columns(E.G.field, cols, a * b * E.G.dim)
    return E._block_maps[a]


@dataclass(frozen=True)
class ATightness:
    a: int
    b: int
    tight: bool
    rank: int
    required_rank: int
    kernel_dim: int
    reason: str


def is_a_tight(E: EmbeddingModel, a: int) -> ATightness:
    """Is every a x (n+1-a) block over G the corner of some element of F^?"""
    Bm = block_map(E, a)
    b = E.n + 1 - a
    r = rank(Bm) if E.dim else 0
    required = a * b * E.G.dim
    kernel = E.dim - r
    tight = r == required
    if tight:
        reason = "block map surjective"
    else:
        reason = f"rank {r} < {required}: deficit {required - r}"
    return ATightness(a, b, tight, r, required, kernel, reason)


@dataclass(frozen=True)
class Tightness:
    tight: bool
    per_a: Tuple[ATightness, ...]

    @property
    def flags(self) -> Tuple[bool, ...]:
        return tuple(t.tight for t in self.per_a)


def is_tight(E: EmbeddingModel) -> Tightness:
    per = tuple(is_a_tight(E, a) for a in range(1, E.n + 1))
    return Tightness(all(t.tight for t in per), per)


@dataclass(frozen=True)
class BlockSolution:
    solved: bool
    coords: Optional[Vector] = None
    element: Optional[GGrid] = None
    obstruction: Optional[Vector] = None


def _as_block_vector(E: EmbeddingModel, a: int, block) -> Vector:
    b = E.n + 1 - a
    if isinstance(block, CornerBlock):
        block = block.entries
    if len(block) != a or any(len(row) != b for row in block):
        raise ShapeMismatch(f"block must be {a}x{b}")
    out = []
    for row in block:
        for entry in row:
            coords = getattr(entry, "coords", entry)
            if len(coords) != E.G.dim:
                raise ShapeMismatch(f"block entry has {len(coords)} coordinates, G has {E.G.dim}")
            out.extend(E.G.field(x) for x in coords)
    return tuple(out)


def solve_for_block(E: EmbeddingModel, a: int, block) -> BlockSolution:
    """The element of F^ with the given upper-right a x b block, or a separating functional."""
    Bm = block_map(E, a)
    target = _as_block_vector(E, a, block)
    sol = solve_linear(Bm, target) if E.dim else None
    if sol is not None:
        return BlockSolution(True, sol.solution, E.element(sol.solution))
    f = E.G.field
    for y in nullspace(Bm.transpose()) if E.dim else _unit_functionals(len(target), f):
        if dot(y, target, f):
            return BlockSolution(False, obstruction=y)
    raise AssertionError("inconsistent system without an obstruction")


def _unit_functionals(size, f):
    return [tuple(f.one if i == j else f.zero for j in range(size)) for i in range(size)]


def first_missing_block(E: EmbeddingModel, a: int) -> Optional[GGrid]:
    """First standard unit block (row-major, G-basis inner) outside the image of the block map."""
    b = E.n + 1 - a
    G = E.G
    zero = (G.field.zero,) * G.dim
    for i, j, t in itertools.product(range(a), range(b), range(G.dim)):
        entry = tuple(G.field.one if s == t else G.field.zero for s in range(G.dim))
        block = tuple(tuple(entry if (r, c) == (i, j) else zero for c in range(b)) for r in range(a))
        if not solve_for_block(E, a, block).solved:
            return block
    return None


def exhaustive_block_counts(E: EmbeddingModel, a: int) -> Counter:
    """Over a finite field: how often each a x b block occurs among all elements of F^."""
    f = E.G.field
    if not f.is_finite:
        raise ValueError("exhaustive enumeration needs a finite ground field")
    counts: Counter = Counter()
    for coords in itertools.product(list(f.elements()), repeat=E.dim):
        counts[corner_block(E.element(coords), a).entries] += 1
    return counts


def embed_from_extension(E: ExtensionPresentation, name: Optional[str] = None) -> EmbeddingModel:
    """phi(F) <= M_n(G) from the right action of F on the left G-space F."""
    images = []
    for e in E.F.basis():
        images.append(tuple(E.left_g_coordinates(f * e) for f in E.left_basis))
    return EmbeddingModel(E.g_algebra, E.n, images, name=name or E.name)


def extension_from_tight(E: EmbeddingModel, name: Optional[str] = None) -> ExtensionPresentation:
    """Recover G <= F^ (first rows (g,0,...,0)) and f_i (first row = i-th unit vector)."""
    if not is_a_tight(E, 1).tight:
        raise NotOneTight(f"model {E.name!r} is not 1-tight")
    G, n = E.G, E.n
    zero = (G.field.zero,) * G.dim
    F = E.as_algebra

    def preimage(first_row):
        return F(solve_for_block(E, 1, (tuple(first_row),)).coords)

    g_copy = [preimage([g.coords] + [zero] * (n - 1)) for g in G.basis()]
    fs = [preimage([G.unit if j == i else zero for j in range(n)]) for i in range(n)]
    Gsub = Subspace(F, g_copy)
    return ExtensionPresentation(F, Gsub, fs, name=name or f"{E.name}:ext")


def roundtrip_model(E: EmbeddingModel) -> EmbeddingModel:
    """embed_from_extension(extension_from_tight(E)), with entries mapped back into E's G."""
    ext = extension_from_tight(E)
    again = embed_from_extension(ext)
    F = ext.F
    G_copy = ext.G

    def to_original(entry_coords):
        # G-copy coordinates -> element of F^ -> its (1,1) entry, which is the original g
        x = G_copy.element(entry_coords)
        return E.element(F(x).coords)[0][0]

    grids = [tuple(tuple(to_original(entry) for entry in row) for row in g) for g in again.image_basis]
    return EmbeddingModel(E.G, E.n, grids, name=f"{E.name}:roundtrip", check=False)


def dimension_law_holds(E: EmbeddingModel) -> bool:
    """a-tight forces dim_k F^ = a*(n+1-a)*dim_k G; check no a violates that implication."""
    for a in range(1, E.n + 1):
        t = is_a_tight(E, a)
        if t.tight and E.dim != a * (E.n + 1 - a) * E.G.dim:
            return False
    return True
