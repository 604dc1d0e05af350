"""Division ring extensions G <= F given as a subring of a structure-constant algebra.

Everything here is linear algebra over the central ground field k: left
G-spans are k-spans of ``g*x`` over a k-basis of G, and the ladders

    L_k = G f_0 + ... + G f_k
    S_k = {f : L_k f <= L_k}
    D_k = {f : L_{k-1} f <= L_k}     (D_0 = F)

are k-subspaces obtained as nullspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    AlgebraElement,
    StructureConstantAlgebra,
    Subspace,
    left_regular_rep,
    subalgebra,
    subring_closure,
)
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotASubring,
    NotFree,
    NotLeftSubmodule,
    ValidationError,
)
from .linalg import Matrix, combine, normalize_leading, nullspace, solve_linear

Grid = Tuple[Tuple[AlgebraElement, ...], ...]


def left_span(G: Subspace, elements: Sequence[AlgebraElement]) -> Subspace:
    """k-span of ``g*x`` for g over a k-basis of G and x in ``elements``."""
    gs = G.elements()
    return Subspace(G.algebra, [g * x for x in elements for g in gs])


def _check_subring(G: Subspace):
    F = G.algebra
    if F.one not in G:
        raise NotASubring("G does not contain 1")
    if not G.is_multiplicatively_closed():
        raise NotASubring("G is not closed under multiplication")


def compute_left_basis(F: StructureConstantAlgebra, G: Subspace) -> List[AlgebraElement]:
    """Greedy left G-basis of F: f_0 = 1, then the first ambient basis vectors outside the span."""
    if G.algebra is not F:
        raise NotASubring("G is not a subspace of F")
    _check_subring(G)
    basis = [F.one]
    span = left_span(G, basis)
    for e in F.basis():
        if span.dim == F.dim:
            break
        if e not in span:
            basis.append(e)
            span = left_span(G, basis)
    if span.dim != F.dim or len(basis) * G.dim != F.dim:
        raise NotFree(f"left spans have k-dimension {span.dim}; n*dim G = {len(basis) * G.dim} != {F.dim}")
    return basis


class ExtensionPresentation:
    """A pair G <= F with a fixed left G-basis ``f_0 = 1, ..., f_{n-1}`` of F."""

    def __init__(
        self,
        F: StructureConstantAlgebra,
        G: Subspace,
        left_basis: Optional[Sequence[AlgebraElement]] = None,
        name: str = "E",
    ):
        if G.algebra is not F:
            raise NotASubring("G must be a subspace of F")
        _check_subring(G)
        self.F = F
        self.G = G
        self.name = name
        if left_basis is None:
            left_basis = compute_left_basis(F, G)
        self.left_basis = tuple(F(f) for f in left_basis)
        if not self.left_basis or self.left_basis[0] != F.one:
            raise ValidationError("the left basis must start with f_0 = 1")
        n = len(self.left_basis)
        if n * G.dim != F.dim or left_span(G, self.left_basis).dim != F.dim:
            raise NotFree("the given elements are not a left G-basis of F")
        self.n = n

    @classmethod
    def from_generators(cls, F, generators, left_basis=None, name="E") -> "ExtensionPresentation":
        G = subring_closure(F, [F(g) for g in generators], include_unit=True)
        return cls(F, G, left_basis, name=name)

    def __repr__(self):
        return f"ExtensionPresentation({self.name!r}, n={self.n}, dim F={self.F.dim}, dim G={self.G.dim})"

    @cached_property
    def _decomposer(self):
        # columns g_t * f_i, ordered (i, t); the square system is invertible
        gs = self.G.elements()
        cols = [(g * f).coords for f in self.left_basis for g in gs]
        M = Matrix.from_columns(self.F.field, cols, self.F.dim)
        inv_cols = []
        for e in self.F.basis():
            sol = solve_linear(M, e.coords)
            if sol is None or sol.nullspace_basis:
                raise NotFree("left basis does not give unique coordinates")
            inv_cols.append(sol.solution)
        return Matrix.from_columns(self.F.field, inv_cols, self.F.dim)

    def left_coordinates(self, x: AlgebraElement) -> Tuple[AlgebraElement, ...]:
        """The unique ``(a_0, ..., a_{n-1})`` in G with ``x = sum a_i f_i``."""
        c = self._decomposer.apply(self.F(x).coords)
        d = self.G.dim
        return tuple(self.G.element(c[i * d:(i + 1) * d]) for i in range(self.n))

    def left_g_coordinates(self, x: AlgebraElement) -> Tuple[Tuple, ...]:
        """Like :meth:`left_coordinates` but each a_i as coordinates in G's basis."""
        c = self._decomposer.apply(self.F(x).coords)
        d = self.G.dim
        return tuple(tuple(c[i * d:(i + 1) * d]) for i in range(self.n))

    @cached_property
    def g_algebra(self) -> StructureConstantAlgebra:
        return subalgebra(self.G, name=f"G({self.name})")

    @cached_property
    def ladder(self) -> "LadderData":
        return compute_ladder(self)

    def L(self, k: int) -> Subspace:
        if not 0 <= k < self.n:
            raise IndexOutOfRange(f"L_{k} needs 0 <= k < {self.n}")
        return left_span(self.G, self.left_basis[: k + 1])


def phi_embed(E: ExtensionPresentation, a: AlgebraElement) -> Grid:
    """Matrix of right multiplication by ``a`` on the left G-space F: row i = coords of f_i*a."""
    a = E.F(a)
    return tuple(E.left_coordinates(f * a) for f in E.left_basis)


@dataclass(frozen=True)
class LadderData:
    L: Tuple[Subspace, ...]
    S: Tuple[Subspace, ...]
    D: Tuple[Subspace, ...]
    dims_over_S: Tuple[int, ...]


def _block_vanishing(E: ExtensionPresentation, rows: range, cols: range) -> Subspace:
    F = E.F
    images = [phi_embed(E, e) for e in F.basis()]
    eqs = []
    for i in rows:
        for j in cols:
            for l in range(F.dim):
                eqs.append([img[i][j].coords[l] for img in images])
    if not eqs:
        return Subspace.whole(F)
    return Subspace(F, nullspace(Matrix(F.field, eqs, F.dim)))


def compute_ladder(E: ExtensionPresentation) -> LadderData:
    """L_k, S_k, D_k from zero blocks of the phi-images, plus dim D_k / dim S_k."""
    n = E.n
    L = tuple(E.L(k) for k in range(n))
    S = tuple(_block_vanishing(E, range(0, k + 1), range(k + 1, n)) for k in range(n))
    D = tuple(
        Subspace.whole(E.F) if k == 0 else _block_vanishing(E, range(0, k), range(k + 1, n))
        for k in range(n)
    )
    dims = []
    for s, d in zip(S, D):
        if d.dim % s.dim:
            raise ValidationError(f"dim D = {d.dim} not divisible by dim S = {s.dim}; not a division ring?")
        dims.append(d.dim // s.dim)
    return LadderData(L, S, D, tuple(dims))


def right_stabilizer(source: Subspace, target: Subspace) -> Subspace:
    """{a : source * a <= target}, solved directly from containment."""
    F = source.algebra
    ann = target.annihilator()
    eqs = []
    for h in source.elements():
        Lh = left_regular_rep(h)
        for y in ann:
            eqs.append([sum((y[r] * Lh.entries[r][c] for r in range(F.dim)), F.field.zero) for c in range(F.dim)])
    if not eqs:
        return Subspace.whole(F)
    return Subspace(F, nullspace(Matrix(F.field, eqs, F.dim)))


def ladder_by_containment(E: ExtensionPresentation) -> Tuple[Tuple[Subspace, ...], Tuple[Subspace, ...]]:
    """(S, D) recomputed from ``L_k f <= L_k`` / ``L_{k-1} f <= L_k`` without phi."""
    L = [E.L(k) for k in range(E.n)]
    S = tuple(right_stabilizer(L[k], L[k]) for k in range(E.n))
    D = tuple(Subspace.whole(E.F) if k == 0 else right_stabilizer(L[k - 1], L[k]) for k in range(E.n))
    return S, D


@dataclass
class RegularCheck:
    k: int
    holds: bool
    span_dim: int
    ambient_dim: int
    _L: Subspace
    _S: Subspace
    _fk: AlgebraElement

    def decompose(self, f: AlgebraElement) -> Tuple[AlgebraElement, AlgebraElement]:
        """Return (a, b) with a in L_{k-1}, b in S_{k-1} and f = a + f_k*b."""
        if not self.holds:
            raise ValueError(f"L_{self.k - 1} + f_{self.k} S_{self.k - 1} is not all of F")
        F = self._L.algebra
        ls = self._L.elements()
        ss = self._S.elements()
        cols = [x.coords for x in ls] + [(self._fk * s).coords for s in ss]
        sol = solve_linear(Matrix.from_columns(F.field, cols, F.dim), F(f).coords)
        c = sol.solution
        a = F(combine(c[: len(ls)], [x.coords for x in ls], F.dim, F.field))
        b = F(combine(c[len(ls):], [s.coords for s in ss], F.dim, F.field))
        return a, b


def lemma_regular_check(E: ExtensionPresentation, k: int) -> RegularCheck:
    """Does every f in F split as ``a + f_k*b`` with a in L_{k-1} and b in S_{k-1}?"""
    if not 1 <= k <= E.n - 1:
        raise IndexOutOfRange(f"k={k} outside 1..{E.n - 1}")
    L = E.ladder.L[k - 1]
    S = E.ladder.S[k - 1]
    fk = E.left_basis[k]
    total = L + S.left_mul(fk)
    return RegularCheck(k, total.dim == E.F.dim, total.dim, E.F.dim, L, S, fk)


def is_left_submodule(E: ExtensionPresentation, H: Subspace) -> bool:
    return all(g * h in H for g in E.G.elements() for h in H.elements())


def transporter(E: ExtensionPresentation, H1: Subspace, H2: Subspace) -> Optional[AlgebraElement]:
    """A nonzero ``a`` with ``H1*a == H2`` (leading coordinate scaled to 1), or None."""
    for name, H in (("H1", H1), ("H2", H2)):
        if H.algebra is not E.F or not is_left_submodule(E, H):
            raise NotLeftSubmodule(f"{name} is not a left G-subspace of F")
    if H1.dim != H2.dim:
        raise DimensionMismatch(f"dim H1 = {H1.dim} != dim H2 = {H2.dim} over k")
    sols = right_stabilizer(H1, H2)
    for v in sols.basis:
        a = E.F(normalize_leading(v))
        if H1.right_mul(a) == H2:
            return a
    return None


@dataclass(frozen=True)
class GarciaReport:
    n: int
    dims_over_S: Tuple[int, ...]
    condition2: Tuple[bool, ...]
    sequence: Tuple[int, ...]
    target: Tuple[int, ...]
    sequence_match: bool
    verdict: str


def garcia_target(n: int) -> Tuple[int, ...]:
    """(1, 2, ..., 2, 1, n) of length n + 2."""
    return (1,) + (2,) * (n - 1) + (1, n)


def garcia_report(E: ExtensionPresentation, seed: int = 0) -> GarciaReport:
    """Compare the ladder condition ``dim D_k / dim S_k == 2`` with the bimodule's dimension sequence."""
    from .bimodule import bimodule_from_extension, dimension_sequence

    n = E.n
    dims = E.ladder.dims_over_S
    if n < 2:
        return GarciaReport(n, dims, (), (), (), False, "not-applicable")
    cond = tuple(dims[k] == 2 for k in range(n - 1))
    seq = dimension_sequence(bimodule_from_extension(E), max_len=n + 2, seed=seed).entries
    target = garcia_target(n)
    match = seq == target
    if all(cond) and match:
        verdict = "consistent-positive"
    elif not all(cond) and not match:
        verdict = "consistent-negative"
    else:
        verdict = "inconsistent"
    return GarciaReport(n, dims, cond, seq, target, match, verdict)


def coxeter_catalog(n: int) -> List[Tuple[int, int]]:
    """Dimension vectors (1,0), (2,1), ..., (n,n-1), (1,1), (0,1) of the indecomposables."""
    if n < 2:
        raise ValueError("catalog needs n >= 2")
    return [(t, t - 1) for t in range(1, n + 1)] + [(1, 1), (0, 1)]


def shift_element(E: ExtensionPresentation, k: int) -> Optional[AlgebraElement]:
    """The element e whose phi-image has rows 0..k-1 ending in n-k zeros and row k ending (0,1,0,...).

    Exists (and is unique) for tight embeddings; None if the linear system has no solution.
    """
    n = E.n
    if not 0 <= k <= n - 2:
        return None
    F = E.F
    images = [phi_embed(E, e) for e in F.basis()]
    eqs, rhs = [], []
    one = E.F.one.coords
    for i in range(k + 1):
        for j in range(k, n):
            target = one if (i == k and j == k + 1) else (F.field.zero,) * F.dim
            for l in range(F.dim):
                eqs.append([img[i][j].coords[l] for img in images])
                rhs.append(target[l])
    sol = solve_linear(Matrix(F.field, eqs, F.dim), rhs)
    return None if sol is None else F(sol.solution)


def right_S_generator(E: ExtensionPresentation, k: int) -> Optional[AlgebraElement]:
    """Some b in D_k \\ S_k, preferring the distinguished element e; None if D_k == S_k."""
    lad = E.ladder
    if lad.D[k] == lad.S[k]:
        return None
    e = shift_element(E, k)
    if e is not None and e in lad.D[k] and e not in lad.S[k]:
        return e
    for d in lad.D[k].elements():
        if d not in lad.S[k]:
            return d
    return None


def decompose_over_S(E: ExtensionPresentation, k: int, b: Optional[AlgebraElement], d: AlgebraElement):
    """Solve ``d = s0 + b*s1`` with s0, s1 in S_k; None if impossible."""
    F = E.F
    S = E.ladder.S[k]
    ss = S.elements()
    cols = [s.coords for s in ss]
    if b is not None:
        cols += [(b * s).coords for s in ss]
    sol = solve_linear(Matrix.from_columns(F.field, cols, F.dim), F(d).coords)
    if sol is None:
        return None
    c = sol.solution
    s0 = F(combine(c[: len(ss)], [s.coords for s in ss], F.dim, F.field))
    s1 = F(combine(c[len(ss):], [s.coords for s in ss], F.dim, F.field)) if b is not None else F.zero
    return s0, s1
