"""(A, B)-bimodules given by action matrices, their right duals and right dimension sequences.

A bimodule is a k-space of dimension m with one m x m matrix per basis
element of A (``x -> a*x``) and of B (``x -> x*b``).  The right dual of an
(A, B)-bimodule M is Hom_B(M, B), a (B, A)-bimodule via

    (b . phi)(x) = b * phi(x),    (phi . a)(x) = phi(a * x).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .algebra import StructureConstantAlgebra, division_probe, left_regular_rep, right_regular_rep
from .errors import NotDivisionCertified, ValidationError
from .linalg import Matrix, nullspace, solve_linear

DEFAULT_MAX_LEN = 16


class BimoduleRep:
    def __init__(
        self,
        A: StructureConstantAlgebra,
        B: StructureConstantAlgebra,
        dim: int,
        left_action: Sequence[Matrix],
        right_action: Sequence[Matrix],
        name: str = "M",
    ):
        if A.field != B.field:
            raise ValidationError("A and B must share the ground field")
        if len(left_action) != A.dim or len(right_action) != B.dim:
            raise ValidationError("one action matrix per basis element of A and of B is required")
        for mat in list(left_action) + list(right_action):
            if mat.shape != (dim, dim):
                raise ValidationError(f"action matrix of shape {mat.shape}, expected {(dim, dim)}")
        self.A = A
        self.B = B
        self.dim = dim
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)
        self.name = name

    @property
    def field(self):
        return self.A.field

    def __repr__(self):
        return f"BimoduleRep({self.name!r}, ({self.A.name}, {self.B.name}), dim_k={self.dim})"

    def left_matrix(self, coords: Sequence) -> Matrix:
        return _combine(self.field, coords, self.left_action, self.dim)

    def right_matrix(self, coords: Sequence) -> Matrix:
        return _combine(self.field, coords, self.right_action, self.dim)


def _combine(field, coords, mats, dim) -> Matrix:
    out = Matrix.zeros(field, dim, dim)
    for c, mat in zip(coords, mats):
        if c:
            out = out + mat.scale(c)
    return out


@dataclass
class BimoduleReport:
    ok: bool
    witnesses: List[str] = dc_field(default_factory=list)


def verify_bimodule(M: BimoduleRep) -> BimoduleReport:
    """Unit laws, multiplicativity of both actions on basis pairs, and commuting actions."""
    f = M.field
    I = Matrix.identity(f, M.dim)
    w = []
    if M.left_matrix(M.A.unit) != I:
        w.append("left unit acts nontrivially")
    if M.right_matrix(M.B.unit) != I:
        w.append("right unit acts nontrivially")
    for i in range(M.A.dim):
        for j in range(M.A.dim):
            if M.left_matrix(M.A.table[i][j]) != M.left_action[i] @ M.left_action[j]:
                w.append(f"left action not multiplicative at (a{i}, a{j})")
    for i in range(M.B.dim):
        for j in range(M.B.dim):
            # x*(b_i b_j) = (x*b_i)*b_j
            if M.right_matrix(M.B.table[i][j]) != M.right_action[j] @ M.right_action[i]:
                w.append(f"right action not multiplicative at (b{i}, b{j})")
    for i, La in enumerate(M.left_action):
        for j, Rb in enumerate(M.right_action):
            if La @ Rb != Rb @ La:
                w.append(f"actions do not commute at (a{i}, b{j})")
    return BimoduleReport(not w, w)


def _require_division(B: StructureConstantAlgebra, seed: int):
    verdict = division_probe(B, seed)
    if verdict.certified_not_division:
        raise NotDivisionCertified(f"{B.name} has zero divisor {verdict.element} * {verdict.certificate}")


def right_dim(M: BimoduleRep, seed: int = 0) -> int:
    """dim of M as a right B-space, i.e. dim_k M / dim_k B."""
    _require_division(M.B, seed)
    q, r = divmod(M.dim, M.B.dim)
    if r:
        raise ValidationError(f"dim_k M = {M.dim} is not a multiple of dim_k B = {M.B.dim}")
    return q


def right_dual(M: BimoduleRep, seed: int = 0) -> BimoduleRep:
    """Hom_B(M, B) as a (B, A)-bimodule."""
    _require_division(M.B, seed)
    f = M.field
    B = M.B
    m, d = M.dim, B.dim
    nvars = d * m  # phi is a d x m matrix, variable index r*m + c

    def idx(r, c):
        return r * m + c

    eqs = []
    for j in range(d):
        R = M.right_action[j].entries
        rho = right_regular_rep(B.basis_element(j)).entries
        for r in range(d):
            for c in range(m):
                row = [f.zero] * nvars
                for s in range(m):
                    if R[s][c]:
                        row[idx(r, s)] += R[s][c]
                for t in range(d):
                    if rho[r][t]:
                        row[idx(t, c)] -= rho[r][t]
                eqs.append(row)
    if nvars == 0:
        hom = ()
    elif eqs:
        hom = nullspace(Matrix(f, eqs, nvars))
    else:
        hom = tuple(tuple(f.one if i == j else f.zero for j in range(nvars)) for i in range(nvars))
    n_hom = len(hom)
    basis_mats = [Matrix(f, [v[r * m:(r + 1) * m] for r in range(d)], m) for v in hom]
    coord_matrix = Matrix.from_columns(f, hom, nvars) if hom else None

    def coords_of(phi: Matrix):
        vec = [x for row in phi.entries for x in row]
        sol = solve_linear(coord_matrix, vec)
        if sol is None:
            raise ValidationError("dual action left the Hom-space")
        return sol.solution

    def action(transform):
        cols = [coords_of(transform(phi)) for phi in basis_mats]
        return Matrix.from_columns(f, cols, n_hom) if n_hom else Matrix.zeros(f, 0, 0)

    left = [action(lambda phi, lam=left_regular_rep(b): lam @ phi) for b in B.basis()]
    right = [action(lambda phi, La=La: phi @ La) for La in M.left_action]
    return BimoduleRep(B, M.A, n_hom, left, right, name=f"{M.name}^r")


@dataclass(frozen=True)
class DimensionSequence:
    entries: Tuple[int, ...]
    period: Optional[int]
    truncated: bool
    ring_pairs: Tuple[Tuple[str, str], ...] = ()


def _minimal_period(states: Sequence) -> Optional[int]:
    n = len(states)
    for p in range(1, n // 2 + 1):
        if all(states[i] == states[i + p] for i in range(n - p)):
            return p
    return None


def dimension_sequence(M: BimoduleRep, max_len: int = DEFAULT_MAX_LEN, seed: int = 0) -> DimensionSequence:
    """(dim M_B, dim (M^r)_A, dim (M^rr)_B, ...) for ``max_len`` terms.

    The period is the least p such that the (ring pair, dimension) states
    repeat with period p over everything computed, seen at least twice in
    full; ``truncated`` means no period was confirmed within ``max_len``.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    entries, states, pairs = [], [], []
    cur = M
    for step in range(max_len):
        d = right_dim(cur, seed)
        entries.append(d)
        pairs.append((cur.A.name, cur.B.name))
        states.append((cur.A.name, cur.B.name, d))
        if step + 1 < max_len:
            cur = right_dual(cur, seed)
    period = _minimal_period(states)
    return DimensionSequence(tuple(entries), period, period is None, tuple(pairs))


def bimodule_from_extension(E) -> BimoduleRep:
    """F as a (G, F)-bimodule: G acting by left multiplication, F by right multiplication."""
    F = E.F
    left = [left_regular_rep(g) for g in E.G.elements()]
    right = [right_regular_rep(e) for e in F.basis()]
    return BimoduleRep(E.g_algebra, F, F.dim, left, right, name=f"{E.name}:GFF")

