"""Small algebras used by the corpus, tests and scripts."""

from __future__ import annotations

import random
from typing import List, Sequence

from .algebra import StructureConstantAlgebra
from .linalg import Matrix, solve_linear
from .scalars import FieldSpec

Q = FieldSpec.rationals()


def simple_extension(field: FieldSpec, poly: Sequence, var: str = "c", name: str = "K") -> StructureConstantAlgebra:
    """k[x]/(x^d + poly[d-1] x^{d-1} + ... + poly[0]) with basis 1, x, ..., x^{d-1}.

    ``poly`` lists the low-order coefficients of a monic polynomial.
    """
    d = len(poly)
    names = ["1"] + [var if t == 1 else f"{var}^{t}" for t in range(1, d)]
    # power x^t for t < 2d-1 reduced modulo the polynomial
    powers = []
    for t in range(2 * d - 1):
        if t < d:
            powers.append([1 if s == t else 0 for s in range(d)])
        else:
            prev = powers[t - 1]
            top = prev[d - 1]
            shifted = [0] + prev[: d - 1]
            powers.append([field(shifted[s]) - field(top) * field(poly[s]) for s in range(d)])
    table = [[powers[i + j] for j in range(d)] for i in range(d)]
    return StructureConstantAlgebra(field, names, table, name=name)


def sqrt2() -> StructureConstantAlgebra:
    return simple_extension(Q, [-2, 0], var="r", name="sqrt2")


def cbrt2() -> StructureConstantAlgebra:
    return simple_extension(Q, [-2, 0, 0], var="c", name="cbrt2")


def f9() -> StructureConstantAlgebra:
    """GF(9) = GF(3)[t]/(t^2 + 1)."""
    return simple_extension(FieldSpec.prime(3), [1, 0], var="t", name="f9")


def quaternion_algebra(field: FieldSpec, a, b, name: str = "quat") -> StructureConstantAlgebra:
    """(a, b)_k: i^2 = a, j^2 = b, k = ij = -ji."""
    a, b = field(a), field(b)

    def v(c0=0, c1=0, c2=0, c3=0):
        return [field(c0), field(c1), field(c2), field(c3)]

    # rows: 1, i, j, k
    table = [
        [v(1), v(0, 1), v(0, 0, 1), v(0, 0, 0, 1)],
        [v(0, 1), v(a), v(0, 0, 0, 1), v(0, 0, a)],
        [v(0, 0, 1), v(0, 0, 0, -1), v(b), v(0, -b)],
        [v(0, 0, 0, 1), v(0, 0, -a), v(0, b), v(-a * b)],
    ]
    return StructureConstantAlgebra(field, ["1", "i", "j", "k"], table, name=name)


def quaternions() -> StructureConstantAlgebra:
    return quaternion_algebra(Q, -1, -1, name="quat")


def split_quaternions() -> StructureConstantAlgebra:
    return quaternion_algebra(Q, 1, -1, name="split-quat")


def random_irreducible(rng: random.Random, n: int, field: FieldSpec = Q, bound: int = 5) -> List[int]:
    """Low-order coefficients of a random monic irreducible degree-n polynomial over ``field``."""
    import sympy

    x = sympy.Symbol("x")
    opts = {"domain": sympy.QQ} if field.p is None else {"modulus": field.p}
    while True:
        low = [rng.randint(-bound, bound) for _ in range(n)]
        if field.p is None and low[0] == 0:
            continue
        poly = sympy.Poly([1] + low[::-1], x, **opts)
        if poly.is_irreducible:
            return low


def companion_matrix(field: FieldSpec, low: Sequence) -> Matrix:
    """Companion matrix of x^n + low[n-1] x^{n-1} + ... + low[0]."""
    n = len(low)
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = field.one
    for i in range(n):
        rows[i][n - 1] = -field(low[i])
    return Matrix(field, rows, n)


def random_invertible(rng: random.Random, field: FieldSpec, n: int, bound: int = 3):
    """A random invertible n x n matrix and its inverse."""
    while True:
        P = Matrix(field, [[field.random(rng, bound) for _ in range(n)] for _ in range(n)], n)
        cols = []
        for e in Matrix.identity(field, n).transpose().entries:
            sol = solve_linear(P, e)
            if sol is None:
                break
            cols.append(sol.solution)
        else:
            return P, Matrix.from_columns(field, cols, n)


def random_field_model(seed: int, n: int, field: FieldSpec = Q, check: bool = True):
    """A degree-n field inside M_n(k): powers of a conjugated companion matrix.

    Returns an :class:`~tightlab.tightness.EmbeddingModel` with G = k, so
    dim_k F^ = n = n * dim_k G.  The image is a field because the
    characteristic polynomial is irreducible, so ``check=False`` (skip the
    closure test and division probe) loses nothing but the cross-check.
    """
    from .tightness import EmbeddingModel

    rng = random.Random(seed)
    low = random_irreducible(rng, n, field)
    C = companion_matrix(field, low)
    P, Pinv = random_invertible(rng, field, n)
    X = P @ C @ Pinv
    power = Matrix.identity(field, n)
    grids = []
    for _ in range(n):
        grids.append([[(x,) for x in row] for row in power.entries])
        power = power @ X
    k = StructureConstantAlgebra(field, ["1"], [[[1]]], name="k")
    return EmbeddingModel(k, n, grids, name=f"random-{field.name}-n{n}-s{seed}", check=check, seed=seed)
