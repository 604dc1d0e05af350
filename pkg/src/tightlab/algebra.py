"""Finite-dimensional algebras over k presented by structure constants.

A :class:`StructureConstantAlgebra` stores ``table[i][j]``, the coordinate
vector of ``e_i * e_j``.  Elements are immutable coordinate tuples bound to
their algebra; k-subspaces are kept in reduced echelon form so that two
equal subspaces always compare equal.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import AlgebraMismatch, NotInvertible, ValidationError, ZeroElement
from .linalg import Matrix, Vector, annihilator, combine, echelon_basis, solve_linear, nullspace
from .scalars import FieldSpec, Scalar

EXHAUSTIVE_LIMIT = 4096
DEFAULT_TRIALS = 64


class StructureConstantAlgebra:
    def __init__(
        self,
        field: FieldSpec,
        names: Sequence[str],
        table: Sequence[Sequence[Sequence]],
        unit: Optional[Sequence] = None,
        name: str = "A",
        check: bool = True,
    ):
        m = len(names)
        if m < 1:
            raise ValidationError("an algebra needs at least one basis element")
        if len(set(names)) != m:
            raise ValidationError(f"duplicate basis names in {list(names)}")
        if len(table) != m or any(len(row) != m for row in table):
            raise ValidationError(f"structure table must be {m}x{m}")
        tab = []
        for i, row in enumerate(table):
            trow = []
            for j, coeffs in enumerate(row):
                if len(coeffs) != m:
                    raise ValidationError(f"product e{i}*e{j} has {len(coeffs)} coordinates, expected {m}")
                trow.append(tuple(field(c) for c in coeffs))
            tab.append(tuple(trow))
        self.field = field
        self.names = tuple(names)
        self.table = tuple(tab)
        self.name = name
        if unit is None:
            unit = [1] + [0] * (m - 1)
        if len(unit) != m:
            raise ValidationError(f"unit has {len(unit)} coordinates, expected {m}")
        self.unit = tuple(field(c) for c in unit)
        self._probe_cache: Dict[Tuple[int, int], "ProbeVerdict"] = {}
        if check:
            report = verify_algebra(self)
            if not report.ok:
                raise ValidationError(f"algebra {name!r} failed verification: {report.summary()}")

    @classmethod
    def from_products(
        cls,
        field: FieldSpec,
        names: Sequence[str],
        products: Iterable[Tuple[int, int, Sequence]],
        unit: Optional[Sequence] = None,
        name: str = "A",
        check: bool = True,
    ) -> "StructureConstantAlgebra":
        """Build from sparse ``(i, j, coeffs)`` triples; omitted products are zero."""
        m = len(names)
        zero = [0] * m
        table = [[zero for _ in range(m)] for _ in range(m)]
        seen = set()
        for i, j, coeffs in products:
            if not (0 <= i < m and 0 <= j < m):
                raise ValidationError(f"product index ({i}, {j}) out of range for dimension {m}")
            if (i, j) in seen:
                raise ValidationError(f"product ({i}, {j}) given twice")
            seen.add((i, j))
            table[i][j] = list(coeffs)
        return cls(field, names, table, unit=unit, name=name, check=check)

    @property
    def dim(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"StructureConstantAlgebra({self.name!r}, dim={self.dim}, field={self.field.name})"

    def __call__(self, coords) -> "AlgebraElement":
        if isinstance(coords, AlgebraElement):
            if coords.algebra is not self:
                raise AlgebraMismatch(f"element of {coords.algebra.name} given to {self.name}")
            return coords
        if isinstance(coords, Mapping):
            vec = [self.field.zero] * self.dim
            for key, c in coords.items():
                vec[self.names.index(key)] = self.field(c)
            coords = vec
        return AlgebraElement(self, coords)

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, [1 if j == i else 0 for j in range(self.dim)])

    def basis(self) -> List["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def gen(self, name: str) -> "AlgebraElement":
        return self.basis_element(self.names.index(name))

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [0] * self.dim)

    def mul_coords(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        m = self.dim
        out = [self.field.zero] * m
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for l, c in enumerate(row[j]):
                    if c:
                        out[l] = out[l] + ab * c
        return tuple(out)

    def random_element(self, rng: random.Random, nonzero: bool = True) -> "AlgebraElement":
        while True:
            u = AlgebraElement(self, [self.field.random(rng) for _ in range(self.dim)])
            if u or not nonzero:
                return u

    def elements(self) -> Iterable["AlgebraElement"]:
        """Every element; only for finite k."""
        for coords in itertools.product(list(self.field.elements()), repeat=self.dim):
            yield AlgebraElement(self, coords)


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructureConstantAlgebra, coords: Sequence):
        if len(coords) != algebra.dim:
            raise ValidationError(f"{len(coords)} coordinates for algebra of dimension {algebra.dim}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", tuple(algebra.field(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            return False
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [c * a for a in self.coords])

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [c * a for a in self.coords])

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return other.algebra is self.algebra and other.coords == self.coords
        return NotImplemented

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def __str__(self):
        terms = []
        for c, name in zip(self.coords, self.algebra.names):
            if not c:
                continue
            s = str(c)
            if name == "1":
                terms.append(s)
            elif s == "1":
                terms.append(name)
            elif s == "-1":
                terms.append(f"-{name}")
            else:
                terms.append(f"{s}*{name}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"<{self.algebra.name}: {self}>"


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    if u.algebra is not v.algebra:
        raise AlgebraMismatch(f"{u.algebra.name} vs {v.algebra.name}")
    return AlgebraElement(u.algebra, u.algebra.mul_coords(u.coords, v.coords))


def left_regular_rep(u: AlgebraElement) -> Matrix:
    """Matrix of ``v -> u*v``; column j holds the coordinates of ``u*e_j``."""
    A = u.algebra
    cols = [A.mul_coords(u.coords, e) for e in _unit_vectors(A)]
    return Matrix.from_columns(A.field, cols, A.dim)


def right_regular_rep(u: AlgebraElement) -> Matrix:
    """Matrix of ``v -> v*u``."""
    A = u.algebra
    cols = [A.mul_coords(e, u.coords) for e in _unit_vectors(A)]
    return Matrix.from_columns(A.field, cols, A.dim)


def _unit_vectors(A: StructureConstantAlgebra) -> List[Vector]:
    f = A.field
    return [tuple(f.one if i == j else f.zero for j in range(A.dim)) for i in range(A.dim)]


@dataclass
class AlgebraReport:
    associative: bool
    unital: bool
    associativity_witnesses: List[Tuple[int, int, int]] = dc_field(default_factory=list)
    unit_witnesses: List[Tuple[str, int]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.associative and self.unital

    def summary(self) -> str:
        parts = []
        if not self.associative:
            parts.append(f"non-associative at (i,j,l) in {self.associativity_witnesses[:3]}")
        if not self.unital:
            parts.append(f"unit fails at {self.unit_witnesses[:3]}")
        return "; ".join(parts) or "ok"


def verify_algebra(A: StructureConstantAlgebra) -> AlgebraReport:
    """Check all m^3 associativity triples and the two-sided unit law."""
    es = _unit_vectors(A)
    witnesses = []
    for i, j, l in itertools.product(range(A.dim), repeat=3):
        left = A.mul_coords(A.table[i][j], es[l])
        right = A.mul_coords(es[i], A.table[j][l])
        if left != right:
            witnesses.append((i, j, l))
    unit_bad = []
    for i, e in enumerate(es):
        if A.mul_coords(A.unit, e) != e:
            unit_bad.append(("left", i))
        if A.mul_coords(e, A.unit) != e:
            unit_bad.append(("right", i))
    return AlgebraReport(not witnesses, not unit_bad, witnesses, unit_bad)


def invert(u: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse of ``u``, or raise :class:`NotInvertible` with a zero-divisor certificate."""
    if not u:
        raise ZeroElement("cannot invert zero")
    A = u.algebra
    L = left_regular_rep(u)
    sol = solve_linear(L, A.unit)
    if sol is None:
        w = AlgebraElement(A, nullspace(L)[0])
        raise NotInvertible(u, w)
    v = AlgebraElement(A, sol.solution)
    if (v * u).coords != A.unit:
        # cannot happen in a finite-dimensional associative algebra
        w = AlgebraElement(A, nullspace(right_regular_rep(u))[0])
        raise NotInvertible(u, w)
    return v


@dataclass(frozen=True)
class ProbeVerdict:
    certified_not_division: bool
    element: Optional[AlgebraElement]
    certificate: Optional[AlgebraElement]
    exhaustive: bool
    seed: int
    trials: int
    checked: int

    @property
    def verdict(self) -> str:
        return "certified_not_division" if self.certified_not_division else "no_counterexample_found"

    def policy(self) -> str:
        if self.certified_not_division:
            return f"zero divisor {self.element} * {self.certificate} (seed={self.seed})"
        if self.exhaustive:
            return f"exhaustive: all {self.checked} nonzero elements inverted"
        return (f"probe: {self.checked} inversions succeeded "
                f"(basis, pairwise sums, {self.trials} random; seed={self.seed})")


def division_probe(A: StructureConstantAlgebra, seed: int = 0, trials: int = DEFAULT_TRIALS) -> ProbeVerdict:
    """Try to falsify "A is a division ring" by inverting many elements.

    Over GF(p) with p**dim <= 4096 every nonzero element is tried, making a
    negative answer definitive.  Results are cached on the algebra and, by
    structure table, across algebras that share one.
    """
    key = (seed, trials)
    if key in A._probe_cache:
        return A._probe_cache[key]
    memo_key = (A.field.name, A.table, A.unit, seed, trials)
    hit = _probe_memo.get(memo_key)
    if hit is not None:
        v = hit
        rebind = (lambda u: None if u is None else AlgebraElement(A, u.coords))
        verdict = ProbeVerdict(v.certified_not_division, rebind(v.element), rebind(v.certificate),
                               v.exhaustive, seed, trials, v.checked)
        A._probe_cache[key] = verdict
        return verdict
    exhaustive = A.field.is_finite and A.field.p ** A.dim <= EXHAUSTIVE_LIMIT
    if exhaustive:
        candidates = (u for u in A.elements() if u)
    else:
        candidates = _probe_candidates(A, seed, trials)
    checked = 0
    verdict = None
    for u in candidates:
        checked += 1
        try:
            invert(u)
        except NotInvertible as exc:
            verdict = ProbeVerdict(True, u, exc.certificate, exhaustive, seed, trials, checked)
            break
    if verdict is None:
        verdict = ProbeVerdict(False, None, None, exhaustive, seed, trials, checked)
    A._probe_cache[key] = verdict
    _probe_memo[memo_key] = verdict
    return verdict


_probe_memo: Dict[tuple, ProbeVerdict] = {}


def _probe_candidates(A: StructureConstantAlgebra, seed: int, trials: int):
    basis = A.basis()
    yield from basis
    for i, j in itertools.combinations(range(A.dim), 2):
        s = basis[i] + basis[j]
        if s:
            yield s
    rng = random.Random(seed)
    for _ in range(trials):
        yield A.random_element(rng)


class Subspace:
    """A k-subspace of an algebra, stored as a canonical echelon basis."""

    __slots__ = ("algebra", "basis")

    def __init__(self, algebra: StructureConstantAlgebra, vectors: Iterable = ()):
        vecs = [algebra(v).coords for v in vectors]
        self.algebra = algebra
        self.basis: Tuple[Vector, ...] = echelon_basis(vecs, algebra.dim, algebra.field)

    @classmethod
    def whole(cls, algebra: StructureConstantAlgebra) -> "Subspace":
        return cls(algebra, _unit_vectors(algebra))

    @classmethod
    def zero(cls, algebra: StructureConstantAlgebra) -> "Subspace":
        return cls(algebra, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> List[AlgebraElement]:
        return [AlgebraElement(self.algebra, b) for b in self.basis]

    def _check(self, u: AlgebraElement):
        if u.algebra is not self.algebra:
            raise AlgebraMismatch(f"{u.algebra.name} element vs subspace of {self.algebra.name}")

    def coordinates(self, u: AlgebraElement) -> Optional[Vector]:
        """Coordinates of ``u`` in this subspace's basis, or None if ``u`` is outside."""
        self._check(u)
        if not self.basis:
            return () if not u else None
        M = Matrix.from_columns(self.algebra.field, self.basis, self.algebra.dim)
        sol = solve_linear(M, u.coords)
        return None if sol is None else sol.solution

    def __contains__(self, u: AlgebraElement) -> bool:
        return self.coordinates(u) is not None

    def element(self, coords: Sequence[Scalar]) -> AlgebraElement:
        A = self.algebra
        return AlgebraElement(A, combine(coords, self.basis, A.dim, A.field))

    def annihilator(self) -> Tuple[Vector, ...]:
        return annihilator(self.basis, self.algebra.dim, self.algebra.field)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("subspaces of different algebras")
        return Subspace(self.algebra, self.basis + other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return all(AlgebraElement(self.algebra, b) in other for b in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return other.algebra is self.algebra and other.basis == self.basis

    def __hash__(self):
        return hash((id(self.algebra), self.basis))

    def right_mul(self, a: AlgebraElement) -> "Subspace":
        """The subspace ``H * a``."""
        return Subspace(self.algebra, [x * a for x in self.elements()])

    def left_mul(self, a: AlgebraElement) -> "Subspace":
        """The subspace ``a * H``."""
        return Subspace(self.algebra, [a * x for x in self.elements()])

    def is_multiplicatively_closed(self) -> bool:
        els = self.elements()
        return all(x * y in self for x in els for y in els)

    def __repr__(self):
        return f"Subspace({self.algebra.name}, [{', '.join(str(e) for e in self.elements())}])"


def subspace_membership(V: Subspace, u: AlgebraElement) -> Tuple[bool, Optional[Vector]]:
    coords = V.coordinates(u)
    return coords is not None, coords


def subring_closure(
    A: StructureConstantAlgebra,
    generators: Sequence[AlgebraElement],
    include_unit: bool = True,
) -> Subspace:
    """Smallest k-subspace containing the generators (and 1) closed under multiplication."""
    gens = [A(g) for g in generators]
    if include_unit:
        gens.append(A.one)
    V = Subspace(A, gens)
    for _ in range(A.dim + 1):
        els = V.elements()
        W = Subspace(A, els + [x * y for x in els for y in els])
        if W.dim == V.dim:
            return V
        V = W
    return V


def subalgebra(V: Subspace, name: Optional[str] = None) -> StructureConstantAlgebra:
    """The subring ``V`` as a standalone algebra whose basis is ``V.basis``."""
    A = V.algebra
    if V.dim == 0:
        raise ValidationError("the zero subspace is not a subalgebra")
    els = V.elements()
    table = []
    for x in els:
        row = []
        for y in els:
            c = V.coordinates(x * y)
            if c is None:
                raise ValidationError("subspace is not multiplicatively closed")
            row.append(c)
        table.append(row)
    unit = V.coordinates(A.one)
    if unit is None:
        raise ValidationError("subspace does not contain the unit")
    names = [f"b{t}" for t in range(V.dim)]
    return StructureConstantAlgebra(A.field, names, table, unit=unit, name=name or f"sub({A.name})")


def is_division_certified(A: StructureConstantAlgebra, seed: int = 0) -> bool:
    return not division_probe(A, seed).certified_not_division
