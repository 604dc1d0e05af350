"""Per-axiom audits of concrete models against finite fragments of T, T_n and T_n^1.

Division-ring axioms quantify over infinitely many elements when k = Q, so
they are audited by :func:`~tightlab.algebra.division_probe`; a failure is
an exact zero-divisor certificate, a pass states the probe policy.  The
tightness schema reduces to linear surjectivity and is decided exactly.

Fixed finite axiomatization used for "division ring" and "division subring":
associativity and two-sided unit (checked on the structure table;
distributivity is built into bilinear tables), existence of inverses of
nonzero elements (probed), and for subrings containment of 1 and closure
under products (closure under sums and negatives is automatic for
subspaces).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional

from .algebra import AlgebraElement, division_probe, verify_algebra
from .extension import ExtensionPresentation, right_S_generator
from .errors import IndexOutOfRange
from .linalg import Matrix, nullspace, solve_linear
from .tightness import (
    EmbeddingModel,
    first_missing_block,
    grid_mul,
    identity_grid,
    is_a_tight,
    matrix_unit,
)

HOLDS = "holds"
FAILS = "fails"
NOT_INTERPRETABLE = "not-interpretable"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom_id: str
    status: str
    witness: Optional[dict] = None
    note: str = ""

    def __post_init__(self):
        if (self.status == FAILS) != (self.witness is not None):
            raise ValueError(f"{self.axiom_id}: witness must be present exactly when the axiom fails")

    @property
    def holds(self) -> Optional[bool]:
        return None if self.status == NOT_INTERPRETABLE else self.status == HOLDS


def passes(verdicts: List[AxiomVerdict]) -> bool:
    return all(v.status != FAILS for v in verdicts)


@dataclass(frozen=True)
class DkSkResult:
    in_Dk: bool
    in_Sk: bool
    coefficients: dict  # j -> (a_0, ..., a_k) as G-elements of F, or None when f_j x is outside L_k


def eval_Dk_Sk(E: ExtensionPresentation, k: int, x: AlgebraElement) -> DkSkResult:
    """Decide D_k(x) and S_k(x) by solving f_j x = sum_{i<=k} a_i f_i with a_i in G."""
    if not 1 <= k <= E.n - 1:
        raise IndexOutOfRange(f"k={k} outside 1..{E.n - 1}")
    F = E.F
    x = F(x)
    gs = E.G.elements()
    cols = [(g * E.left_basis[i]).coords for i in range(k + 1) for g in gs]
    M = Matrix.from_columns(F.field, cols, F.dim)
    coeffs = {}
    for j in range(k + 1):
        sol = solve_linear(M, (E.left_basis[j] * x).coords)
        if sol is None:
            coeffs[j] = None
        else:
            c = sol.solution
            d = E.G.dim
            coeffs[j] = tuple(E.G.element(c[i * d:(i + 1) * d]) for i in range(k + 1))
    in_D = all(coeffs[j] is not None for j in range(k))
    in_S = in_D and coeffs[k] is not None
    return DkSkResult(in_D, in_S, coeffs)


@dataclass(frozen=True)
class TFragmentModel:
    E: ExtensionPresentation
    k_max: int

    @property
    def designated(self):
        return self.E.left_basis


def _probe_verdict(axiom_id, A, seed, embed=lambda u: u):
    v = division_probe(A, seed)
    if v.certified_not_division:
        return AxiomVerdict(axiom_id, FAILS, {"element": embed(v.element), "certificate": embed(v.certificate)},
                            note=v.policy())
    return AxiomVerdict(axiom_id, HOLDS, note=v.policy())


def audit_T_fragment(M: TFragmentModel, seed: int = 0) -> List[AxiomVerdict]:
    E = M.E
    F, G, n = E.F, E.G, E.n
    out = []
    f0 = E.left_basis[0]
    if f0 == F.one:
        out.append(AxiomVerdict("T(1)", HOLDS))
    else:
        out.append(AxiomVerdict("T(1)", FAILS, {"f_0": f0}))

    rep = verify_algebra(F)
    if not rep.ok:
        out.append(AxiomVerdict("T(2)", FAILS, {"table": rep.summary()}))
    else:
        out.append(_probe_verdict("T(2)", F, seed))

    if F.one not in G:
        out.append(AxiomVerdict("T(3)", FAILS, {"missing": F.one}))
    else:
        bad = next(((x, y) for x in G.elements() for y in G.elements() if x * y not in G), None)
        if bad:
            out.append(AxiomVerdict("T(3)", FAILS, {"product_outside": bad}))
        else:
            out.append(_probe_verdict("T(3)", E.g_algebra, seed, embed=lambda u: G.element(u.coords)))

    if n < 2:
        out.append(AxiomVerdict("T(4)", NOT_INTERPRETABLE, note="no constant f_1"))
    else:
        span = G + G.left_mul(E.left_basis[1])
        missing = next((e for e in F.basis() if e not in span), None)
        if missing is None:
            out.append(AxiomVerdict("T(4)", HOLDS, note="F = G + f_1 G"))
        else:
            out.append(AxiomVerdict("T(4)", FAILS, {"x": missing}, note="x not in G + f_1 G"))

    for k in range(1, M.k_max + 1):
        aid = f"T(5)[k={k}]"
        if k > n - 1:
            out.append(AxiomVerdict(aid, NOT_INTERPRETABLE, note=f"no constant f_{k}"))
            continue
        gs = G.elements()
        cols = [(g * E.left_basis[i]).coords for i in range(k + 1) for g in gs]
        rel = nullspace(Matrix.from_columns(F.field, cols, F.dim))
        if not rel:
            out.append(AxiomVerdict(aid, HOLDS))
        else:
            c = rel[0]
            d = G.dim
            out.append(AxiomVerdict(aid, FAILS, {"a": tuple(G.element(c[i * d:(i + 1) * d]) for i in range(k + 1))}))

    lad = E.ladder
    for k in range(1, M.k_max + 1):
        aid = f"T(6)[k={k}]"
        if k > n - 1:
            out.append(AxiomVerdict(aid, NOT_INTERPRETABLE, note=f"no constant f_{k}"))
            continue
        ratio = lad.dims_over_S[k]
        if ratio <= 2:
            b = right_S_generator(E, k) if ratio == 2 else F.one
            out.append(AxiomVerdict(aid, HOLDS, note=f"dim D_{k} over S_{k} = {ratio}; b = {b}"))
        else:
            out.append(AxiomVerdict(aid, FAILS, {"dim_D": lad.D[k].dim, "dim_S": lad.S[k].dim, "ratio": ratio}))
    return out


def _scalar_centralizer_dim(E: EmbeddingModel) -> int:
    """k-dimension of {X in M_n(G) : X e_ij = e_ij X for all i, j}."""
    G, n = E.G, E.n
    f = G.field
    N = E.ambient_dim
    eqs = []
    for i, j in itertools.product(range(n), repeat=2):
        U = matrix_unit(G, n, i, j)
        cols = []
        for v in range(N):
            X = _basis_grid(G, n, v)
            XU = grid_mul(G, X, U)
            UX = grid_mul(G, U, X)
            cols.append(tuple(a - b for ra, rb in zip(XU, UX) for ea, eb in zip(ra, rb) for a, b in zip(ea, eb)))
        eqs.extend(Matrix.from_columns(f, cols, N).entries)
    return len(nullspace(Matrix(f, eqs, N)))


def _basis_grid(G, n, v):
    d = G.dim
    vec = [G.field.zero] * (n * n * d)
    vec[v] = G.field.one
    return tuple(tuple(tuple(vec[(i * n + j) * d:(i * n + j + 1) * d]) for j in range(n)) for i in range(n))


def audit_Tn(E: EmbeddingModel, seed: int = 0, ks=None) -> List[AxiomVerdict]:
    G, n = E.G, E.n
    out = []
    rep = verify_algebra(G)
    out.append(AxiomVerdict("Tn(1)", HOLDS) if rep.ok else AxiomVerdict("Tn(1)", FAILS, {"table": rep.summary()}))

    I = identity_grid(G, n)
    total = matrix_unit(G, n, 0, 0)
    for i in range(1, n):
        total = tuple(tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(r, s))
                      for r, s in zip(total, matrix_unit(G, n, i, i)))
    bad = None
    if total != I:
        bad = {"sum_eii": "not the identity"}
    else:
        zero = tuple(tuple((G.field.zero,) * G.dim for _ in range(n)) for _ in range(n))
        for i, j, k, l in itertools.product(range(n), repeat=4):
            prod = grid_mul(G, matrix_unit(G, n, i, j), matrix_unit(G, n, k, l))
            want = matrix_unit(G, n, i, l) if j == k else zero
            if prod != want:
                bad = {"units": (i + 1, j + 1, k + 1, l + 1)}
                break
    out.append(AxiomVerdict("Tn(2)", HOLDS, note="standard matrix units") if bad is None
               else AxiomVerdict("Tn(2)", FAILS, bad))

    cdim = _scalar_centralizer_dim(E)
    if cdim != G.dim:
        out.append(AxiomVerdict("Tn(3)", FAILS, {"centralizer_dim": cdim, "expected": G.dim}))
    else:
        out.append(_probe_verdict("Tn(3)", G, seed))

    problems = E.closure_failures()
    if problems:
        out.append(AxiomVerdict("Tn(4)", FAILS, {"closure": problems[0]}))
    else:
        out.append(_probe_verdict("Tn(4)", E.as_algebra, seed, embed=lambda u: E.element(u.coords)))

    for k in (ks if ks is not None else range(1, n + 1)):
        aid = f"Tn(5)[k={k}]"
        t = is_a_tight(E, k)
        if t.tight:
            out.append(AxiomVerdict(aid, HOLDS, note=t.reason))
        else:
            out.append(AxiomVerdict(aid, FAILS, {"block": first_missing_block(E, k), "rank": t.rank,
                                                  "required_rank": t.required_rank}, note=t.reason))
    return out


def audit_Tn1(E: EmbeddingModel, seed: int = 0) -> List[AxiomVerdict]:
    """The audit of T_n with the tightness schema cut down to k = 1."""
    return audit_Tn(E, seed, ks=(1,))
