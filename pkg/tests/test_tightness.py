from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tightlab import zoo
from tightlab.algebra import Subspace
from tightlab.errors import IndexOutOfRange, NotOneTight, ShapeMismatch, ValidationError
from tightlab.extension import ExtensionPresentation, garcia_report
from tightlab.linalg import dot
from tightlab.scalars import FieldSpec
from tightlab.specfile import corpus_names, load_corpus
from tightlab.tightness import (
    EmbeddingModel,
    block_map,
    corner_block,
    dimension_law_holds,
    embed_from_extension,
    exhaustive_block_counts,
    extension_from_tight,
    first_missing_block,
    is_a_tight,
    is_tight,
    roundtrip_model,
    solve_for_block,
)

from conftest import coords, ground, small_ints

Q = FieldSpec.rationals()
K = ground()


def scalar_grid(rows):
    return [[(x,) for x in row] for row in rows]


def corpus_models():
    return [M for name in corpus_names() for M in load_corpus(name).embeddings.values()]


@pytest.fixture(scope="module")
def sqrt2_model():
    return load_corpus("sqrt2").embeddings["sqrt2"]


@pytest.fixture(scope="module")
def cbrt2_model():
    return load_corpus("cbrt2").embeddings["cbrt2"]


@pytest.fixture(scope="module")
def quat_model():
    return load_corpus("quat").embeddings["quat"]


@pytest.fixture(scope="module")
def f9_model():
    return load_corpus("f9").embeddings["f9"]


def test_corner_block_examples():
    x, y, z = "x", "y", "z"
    M2 = [[x, y], ["2y", x]]
    assert corner_block(M2, 1).entries == ((x, y),)
    assert corner_block(M2, 2).entries == ((y,), (x,))
    M3 = [[x, y, z], ["2z", x, y], ["2y", "2z", x]]
    assert corner_block(M3, 2).entries == ((y, z), (x, y))
    assert corner_block(M3, 2).b == 2
    with pytest.raises(IndexOutOfRange):
        corner_block(M3, 0)
    with pytest.raises(IndexOutOfRange):
        corner_block(M3, 4)


def test_sqrt2_tight(sqrt2_model):
    t = is_tight(sqrt2_model)
    assert t.tight and t.flags == (True, True)


def test_cbrt2_per_a(cbrt2_model):
    t = is_tight(cbrt2_model)
    assert not t.tight and t.flags == (True, False, True)
    a2 = t.per_a[1]
    assert (a2.rank, a2.required_rank) == (3, 4)
    assert "3 < 4" in a2.reason


def test_quat_tight(quat_model, f9_model):
    assert is_tight(quat_model).flags == (True, True)
    assert is_tight(f9_model).flags == (True, True)


@pytest.mark.parametrize("M", corpus_models(), ids=lambda M: M.name)
def test_uniqueness_law(M):
    # two elements never share a corner block: the block map has zero kernel on F^
    for a in range(1, M.n + 1):
        assert is_a_tight(M, a).kernel_dim == 0


@pytest.mark.parametrize("M", corpus_models(), ids=lambda M: M.name)
def test_dimension_law_on_corpus(M):
    assert dimension_law_holds(M)


def test_solve_block_sqrt2(sqrt2_model):
    sol = solve_for_block(sqrt2_model, 1, [[(3,), (4,)]])
    assert sol.solved and sol.coords == (3, 4)
    assert [[e[0] for e in row] for row in sol.element] == [[3, 4], [8, 3]]


def test_solve_block_cbrt2(cbrt2_model):
    sol = solve_for_block(cbrt2_model, 2, [[(0,), (0,)], [(1,), (0,)]])
    assert sol.solved and sol.coords == (1, 0, 0)
    bad = [[(1,), (0,)], [(0,), (0,)]]
    miss = solve_for_block(cbrt2_model, 2, bad)
    assert not miss.solved
    y = miss.obstruction
    target = tuple(Fraction(v) for v in (1, 0, 0, 0))
    assert dot(y, target, Q) != 0
    Bm = block_map(cbrt2_model, 2)
    for col in range(Bm.ncols):
        assert dot(y, Bm.column(col), Q) == 0


def test_solve_block_shape(sqrt2_model):
    with pytest.raises(ShapeMismatch):
        solve_for_block(sqrt2_model, 1, [[(1,)]])
    with pytest.raises(ShapeMismatch):
        solve_for_block(sqrt2_model, 1, [[(1, 2), (0, 0)]])


@given(st.lists(coords(2), min_size=2, max_size=2), st.sampled_from([1, 2]))
def test_solve_block_hits_block_quat(entries, a):
    M = load_corpus("quat").embeddings["quat"]
    block = [entries] if a == 1 else [[entries[0]], [entries[1]]]
    sol = solve_for_block(M, a, block)
    assert sol.solved
    got = corner_block(sol.element, a).entries
    assert [[tuple(e) for e in row] for row in got] == [[tuple(e) for e in row] for row in block]


@given(st.lists(small_ints, min_size=4, max_size=4))
def test_solve_block_cbrt2_random(vals):
    M = load_corpus("cbrt2").embeddings["cbrt2"]
    block = [[(vals[0],), (vals[1],)], [(vals[2],), (vals[3],)]]
    sol = solve_for_block(M, 2, block)
    # block [[y, z], [x, y]] is reachable iff its two y-entries agree
    assert sol.solved is (vals[0] == vals[3])
    if sol.solved:
        assert corner_block(sol.element, 2).entries == tuple(tuple((Fraction(v),) for v in r) for r in [vals[:2], vals[2:]])


def test_embed_sqrt2(sqrt2_ext):
    M = embed_from_extension(sqrt2_ext)
    assert [[[e[0] for e in row] for row in g] for g in M.image_basis] == [[[1, 0], [0, 1]], [[0, 1], [2, 0]]]


def test_embed_trivial():
    F = zoo.sqrt2()
    E = ExtensionPresentation(F, Subspace.whole(F))
    M = embed_from_extension(E)
    assert M.n == 1 and M.dim == 2 and M.G.dim == 2
    assert is_tight(M).flags == (True,)
    back = extension_from_tight(M)
    assert back.n == 1


def test_embed_quat(quat_ext):
    M = embed_from_extension(quat_ext)
    assert M.dim == 4 and M.n == 2 and M.G.dim == 2


def test_extension_from_tight_sqrt2(sqrt2_model):
    E = extension_from_tight(sqrt2_model)
    f1 = E.left_basis[1]
    assert sqrt2_model.element(f1.coords) == tuple(tuple((Fraction(v),) for v in r) for r in [[0, 1], [2, 0]])
    for g in E.G.elements():
        grid = sqrt2_model.element(g.coords)
        assert grid[0][1] == grid[1][0] == (0,) and grid[0][0] == grid[1][1]


def test_extension_from_tight_cbrt2(cbrt2_model):
    E = extension_from_tight(cbrt2_model)
    assert E.n == 3
    assert E.ladder.dims_over_S == (3, 2, 1)


def test_not_one_tight():
    M = EmbeddingModel(K, 2, [scalar_grid([[1, 0], [0, 1]])], name="scalars")
    assert not is_a_tight(M, 1).tight
    with pytest.raises(NotOneTight):
        extension_from_tight(M)
    assert first_missing_block(M, 1) == (((0,), (1,)),)


@pytest.mark.parametrize("M", corpus_models(), ids=lambda M: M.name)
def test_roundtrip_image(M):
    assert is_a_tight(M, 1).tight
    assert roundtrip_model(M).image_subspace() == M.image_subspace()


@pytest.mark.parametrize("name", ["sqrt2", "quat", "cbrt2", "f9"])
def test_roundtrip_ladder(name):
    E = load_corpus(name).extensions[name]
    back = extension_from_tight(embed_from_extension(E))
    assert back.ladder.dims_over_S == E.ladder.dims_over_S


@pytest.mark.parametrize("name", ["sqrt2", "quat", "f9"])
def test_theorem_biconditional_n2(name):
    E = load_corpus(name).extensions[name]
    assert E.n == 2
    assert is_tight(embed_from_extension(E)).tight == (garcia_report(E).verdict == "consistent-positive")


def test_f9_exhaustive(f9_model):
    for a in (1, 2):
        counts = exhaustive_block_counts(f9_model, a)
        assert len(counts) == 9 and set(counts.values()) == {1}


def test_exhaustive_needs_finite_field(sqrt2_model):
    with pytest.raises(ValueError):
        exhaustive_block_counts(sqrt2_model, 1)


@pytest.mark.parametrize(
    "grids",
    [
        [[[1, 0], [0, 1]], [[2, 0], [0, 2]]],  # dependent
        [[[1, 0], [0, 1]], [[1, 0], [0, 0]]],  # closed, but e11 is a zero divisor
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]],  # e12 e21 = e11 leaves the span
    ],
)
def test_model_validation(grids):
    with pytest.raises(ValidationError):
        EmbeddingModel(K, 2, [scalar_grid(g) for g in grids])


def test_model_shape_validation():
    with pytest.raises(ValidationError):
        EmbeddingModel(K, 2, [[[(1,)]]])
    with pytest.raises(ValidationError):
        EmbeddingModel(K, 2, [[[(1, 0), (0,)], [(0,), (1,)]]])


def test_golden_ratio_model_is_a_field():
    # X^2 = X + 1 is irreducible over Q, so span{I, X} is a copy of Q(sqrt 5)
    M = EmbeddingModel(K, 2, [scalar_grid([[1, 0], [0, 1]]), scalar_grid([[0, 1], [1, 1]])])
    assert is_tight(M).flags == (True, True)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("n", [3, 4])
def test_random_models_dimension_law(seed, n):
    M = zoo.random_field_model(seed, n)
    assert M.dim == n * M.G.dim
    flags = is_tight(M).flags
    assert flags[0] and flags[-1]
    assert not any(flags[1:-1])
