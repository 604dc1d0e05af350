import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from tightlab import zoo
from tightlab.algebra import (
    StructureConstantAlgebra,
    Subspace,
    division_probe,
    invert,
    left_regular_rep,
    multiply,
    right_regular_rep,
    subalgebra,
    subring_closure,
    subspace_membership,
    verify_algebra,
)
from tightlab.errors import AlgebraMismatch, NotInvertible, ValidationError, ZeroElement
from tightlab.linalg import Matrix
from tightlab.scalars import FieldSpec

from conftest import coords, small_fractions

Q = FieldSpec.rationals()
S2 = zoo.sqrt2()
H = zoo.quaternions()
SPLIT = zoo.split_quaternions()
C3 = zoo.cbrt2()
F9 = zoo.f9()


def sympy_quat(c):
    return sympy.Quaternion(*[sympy.Rational(x.numerator, x.denominator) for x in c])


def test_sqrt2_squared():
    r = S2.gen("r")
    assert multiply(r, r).coords == (2, 0)
    assert str(r * r) == "2"


def test_unit_times_v():
    v = H([1, -2, 3, Fraction(1, 2)])
    assert H.one * v == v == v * H.one


def test_quaternion_products():
    i, j, k = H.gen("i"), H.gen("j"), H.gen("k")
    assert i * j == k
    assert j * i == -k
    assert i * i == j * j == k * k == -H.one


@pytest.mark.parametrize("A", [S2, H, C3, F9, SPLIT], ids=lambda A: A.name)
def test_verified_tables(A):
    rep = verify_algebra(A)
    assert rep.associative and rep.unital
    assert rep.associativity_witnesses == []


def brute_force_associative(table, m):
    """Independent recomputation of (e_i e_j) e_l and e_i (e_j e_l) from a raw table."""
    def mul(u, v):
        out = [Fraction(0)] * m
        for a, b in itertools.product(range(m), repeat=2):
            for l in range(m):
                out[l] += u[a] * v[b] * Fraction(table[a][b][l])
        return out

    basis = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    return [
        (i, j, l)
        for i, j, l in itertools.product(range(m), repeat=3)
        if mul(mul(basis[i], basis[j]), basis[l]) != mul(basis[i], mul(basis[j], basis[l]))
    ]


def test_corrupted_sqrt2_table_is_still_associative():
    # e1*e1 = e1 yields Q[x]/(x^2 - x), an honest (non-division) algebra
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]
    A = StructureConstantAlgebra(Q, ["1", "r"], table, check=False)
    rep = verify_algebra(A)
    assert rep.associative and rep.unital
    assert brute_force_associative(table, 2) == []
    assert division_probe(A).certified_not_division


def test_nonassociative_table_reports_witness():
    table = [list(row) for row in H.table]
    table[1] = list(table[1])
    table[1][2] = tuple(-x for x in table[1][2])  # i*j = -k
    A = StructureConstantAlgebra(Q, H.names, table, check=False)
    rep = verify_algebra(A)
    assert not rep.associative
    oracle = brute_force_associative(table, 4)
    assert rep.associativity_witnesses == oracle
    assert oracle
    with pytest.raises(ValidationError):
        StructureConstantAlgebra(Q, H.names, table)


def test_bad_unit_reported():
    A = StructureConstantAlgebra(Q, ["1", "r"], S2.table, unit=[0, 1], check=False)
    rep = verify_algebra(A)
    assert not rep.unital and rep.unit_witnesses


def test_invert_examples():
    u = S2([1, 1])
    assert invert(u) == S2([-1, 1])
    assert invert(S2.one) == S2.one
    with pytest.raises(ZeroElement):
        invert(S2.zero)


def test_split_quaternion_zero_divisor():
    u = SPLIT([1, 1, 0, 0])
    with pytest.raises(NotInvertible) as info:
        invert(u)
    assert info.value.certificate == SPLIT([1, -1, 0, 0])
    assert not u * info.value.certificate


@pytest.mark.parametrize(
    "u, expected",
    [
        (S2.one, [[1, 0], [0, 1]]),
        (S2.gen("r"), [[0, 2], [1, 0]]),
        (S2.zero, [[0, 0], [0, 0]]),
    ],
)
def test_left_regular_rep_examples(u, expected):
    assert left_regular_rep(u) == Matrix(Q, expected)


def test_division_probe_examples():
    v = division_probe(H, seed=1, trials=64)
    assert not v.certified_not_division and not v.exhaustive
    assert v.checked == 4 + 6 + 64
    s = division_probe(SPLIT)
    assert s.certified_not_division
    assert s.certificate == SPLIT([1, -1, 0, 0])
    f = division_probe(F9)
    assert f.exhaustive and f.checked == 8 and not f.certified_not_division


def test_probe_is_cached_and_seeded():
    A = zoo.quaternion_algebra(Q, -1, -3, name="h13")
    assert division_probe(A, seed=5) is division_probe(A, seed=5)
    assert division_probe(A, seed=5).seed == 5


def test_division_probe_exhaustive_finds_gf3_zero_divisor():
    # t^2 = 1 over GF(3) splits
    A = zoo.simple_extension(FieldSpec(3), [-1, 0], var="t", name="split")
    v = division_probe(A)
    assert v.certified_not_division and v.exhaustive
    assert not v.element * v.certificate or not v.certificate * v.element


@pytest.mark.parametrize(
    "A, gens, dim",
    [
        (H, ["i"], 2),
        (H, [], 1),
        (S2, ["r"], 2),
        (H, ["i", "j"], 4),
        (C3, ["c"], 3),
    ],
)
def test_subring_closure(A, gens, dim):
    V = subring_closure(A, [A.gen(g) for g in gens])
    assert V.dim == dim
    assert V.is_multiplicatively_closed()
    assert A.one in V


def test_subring_closure_span_one_i():
    V = subring_closure(H, [H.gen("i")])
    assert V == Subspace(H, [H.one, H.gen("i")])


def test_membership():
    V = Subspace(H, [H.one, H.gen("i")])
    assert subspace_membership(V, H([1, 1, 0, 0])) == (True, (1, 1))
    assert subspace_membership(V, H.gen("j")) == (False, None)
    assert H.zero in V
    assert H.zero in Subspace.zero(H)
    with pytest.raises(AlgebraMismatch):
        S2.one in V


def test_subalgebra_table():
    G = subalgebra(subring_closure(H, [H.gen("i")]), name="qi")
    i = G.basis_element(1)
    assert i * i == -G.one
    assert verify_algebra(G).ok


def test_cross_algebra_product_rejected():
    with pytest.raises(AlgebraMismatch):
        S2.one * H.one


@given(coords(4), coords(4))
def test_quaternion_product_matches_sympy(a, b):
    prod = H(a) * H(b)
    oracle = sympy_quat(a) * sympy_quat(b)
    assert [sympy.Rational(x.numerator, x.denominator) for x in prod.coords] == [oracle.a, oracle.b, oracle.c, oracle.d]


@given(coords(2), coords(2))
def test_sqrt2_product_matches_sympy(a, b):
    r2 = sympy.sqrt(2)
    x = (a[0] + a[1] * r2) * (b[0] + b[1] * r2)
    got = S2(a) * S2(b)
    assert sympy.simplify(x - (got.coords[0] + got.coords[1] * r2)) == 0


@given(small_fractions, coords(4), coords(4), coords(4))
def test_bilinearity(alpha, u, u2, v):
    U, U2, V = H(u), H(u2), H(v)
    assert (alpha * U + U2) * V == alpha * (U * V) + U2 * V
    assert V * (alpha * U + U2) == alpha * (V * U) + V * U2


@given(coords(4), coords(4))
def test_regular_reps_are_homomorphisms(u, v):
    U, V = H(u), H(v)
    assert left_regular_rep(U * V) == left_regular_rep(U) @ left_regular_rep(V)
    # right multiplication reverses order
    assert right_regular_rep(U * V) == right_regular_rep(V) @ right_regular_rep(U)
    assert left_regular_rep(H.one) == Matrix.identity(Q, 4)


@given(coords(4))
def test_quaternion_inverse_law(u):
    U = H(u)
    assume(U)
    V = invert(U)
    assert U * V == H.one == V * U


@given(coords(4))
def test_split_certificates_recheck(u):
    U = SPLIT(u)
    assume(U)
    try:
        V = invert(U)
    except NotInvertible as exc:
        w = exc.certificate
        assert w and (not U * w or not w * U)
    else:
        assert U * V == SPLIT.one == V * U


@given(st.lists(coords(3), min_size=1, max_size=2))
def test_closure_is_closed(gens):
    V = subring_closure(C3, [C3(g) for g in gens])
    els = V.elements()
    assert all(x * y in V for x in els for y in els)


def test_probe_verdict_shared_between_equal_tables():
    A = zoo.split_quaternions()
    B = zoo.split_quaternions()
    va, vb = division_probe(A), division_probe(B)
    assert vb.element.algebra is B and vb.certificate.algebra is B
    assert va.element.coords == vb.element.coords and va.checked == vb.checked
    assert vb.element * vb.certificate == B.zero or vb.certificate * vb.element == B.zero
