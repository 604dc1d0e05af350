"""Spec documents: JSON files naming algebras, extensions, embeddings and bimodules.

Layout (every section except ``field`` optional)::

    {
      "format_version": 1,
      "field": "Q",                      # or "GF(3)"
      "algebras": {
        "sqrt2": {"basis": ["1", "r"],
                  "unit": ["1", "0"],     # optional, defaults to the first basis vector
                  "table": [["r", "r", ["2", "0"]]]}   # omitted products are zero
      },
      "extensions": {
        "sqrt2": {"algebra": "sqrt2", "subring_generators": [], "left_basis": [[1, 0], [0, 1]]}
      },
      "embeddings": {
        "sqrt2": {"g_algebra": "k", "n": 2, "image_basis": [[[["1"], ["0"]], [["0"], ["1"]]], ...]}
      },
      "bimodules": {
        "sqrt2": {"from_extension": "sqrt2"},
        "other": {"left": "sqrt2", "right": "k", "dim": 2,
                  "left_action": [matrix, ...], "right_action": [matrix, ...]}
      }
    }

Scalars are strings ``"num/den"`` or integers; elements are coordinate lists or
``{basis_name: scalar}`` maps.  Table indices may be basis names or integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .algebra import AlgebraElement, StructureConstantAlgebra
from .bimodule import BimoduleRep, bimodule_from_extension, verify_bimodule
from .errors import ParseError, TightlabError, ValidationError
from .extension import ExtensionPresentation
from .linalg import Matrix
from .scalars import FieldSpec
from .tightness import EmbeddingModel

FORMAT_VERSION = 1


@dataclass
class SpecDocument:
    format_version: int
    field: FieldSpec
    algebras: Dict[str, StructureConstantAlgebra] = dc_field(default_factory=dict)
    extensions: Dict[str, ExtensionPresentation] = dc_field(default_factory=dict)
    embeddings: Dict[str, EmbeddingModel] = dc_field(default_factory=dict)
    bimodules: Dict[str, BimoduleRep] = dc_field(default_factory=dict)
    path: Optional[str] = None


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValidationError(f"duplicate key {k!r}")
        out[k] = v
    return out


class _Ctx:
    """Carries the JSON path for error messages."""

    def __init__(self, path: str):
        self.path = path

    def sub(self, key) -> "_Ctx":
        if isinstance(key, int):
            return _Ctx(f"{self.path}[{key}]")
        return _Ctx(f"{self.path}.{key}" if self.path else str(key))

    def fail(self, msg: str):
        raise ValidationError(f"{self.path}: {msg}")


def _get(obj, key, ctx: _Ctx, kind=None, default=...):
    if not isinstance(obj, dict):
        ctx.fail("expected an object")
    if key not in obj:
        if default is ...:
            ctx.fail(f"missing required key {key!r}")
        return default
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        ctx.sub(key).fail(f"expected {kind.__name__ if isinstance(kind, type) else kind}")
    return val


def _element_coords(A: StructureConstantAlgebra, raw, ctx: _Ctx):
    try:
        if isinstance(raw, dict):
            unknown = set(raw) - set(A.names)
            if unknown:
                ctx.fail(f"unknown basis names {sorted(unknown)} for algebra {A.name!r}")
            return A(raw).coords
        if not isinstance(raw, list) or len(raw) != A.dim:
            ctx.fail(f"expected {A.dim} coordinates for algebra {A.name!r}")
        return tuple(A.field.parse_scalar(x) for x in raw)
    except ValidationError as exc:
        if str(exc).startswith(ctx.path):
            raise
        ctx.fail(str(exc))


def _index(names, raw, ctx: _Ctx) -> int:
    if isinstance(raw, int) and not isinstance(raw, bool):
        if not 0 <= raw < len(names):
            ctx.fail(f"basis index {raw} out of range")
        return raw
    if isinstance(raw, str) and raw in names:
        return names.index(raw)
    ctx.fail(f"unknown basis element {raw!r}")


def _parse_algebra(field: FieldSpec, name: str, raw, ctx: _Ctx) -> StructureConstantAlgebra:
    names = _get(raw, "basis", ctx, list)
    if not names or not all(isinstance(x, str) for x in names):
        ctx.sub("basis").fail("expected a nonempty list of names")
    m = len(names)
    products = []
    for t, triple in enumerate(_get(raw, "table", ctx, list)):
        c = ctx.sub("table").sub(t)
        if not isinstance(triple, list) or len(triple) != 3:
            c.fail("expected [i, j, coefficients]")
        i = _index(names, triple[0], c)
        j = _index(names, triple[1], c)
        coeffs = triple[2]
        if isinstance(coeffs, dict):
            vec = [0] * m
            for key, val in coeffs.items():
                vec[_index(names, key, c)] = val
            coeffs = vec
        if not isinstance(coeffs, list) or len(coeffs) != m:
            c.fail(f"expected {m} coefficients")
        try:
            products.append((i, j, [field.parse_scalar(x) for x in coeffs]))
        except ValidationError as exc:
            c.fail(str(exc))
    unit = raw.get("unit")
    if unit is not None:
        if not isinstance(unit, list) or len(unit) != m:
            ctx.sub("unit").fail(f"expected {m} coordinates")
        unit = [field.parse_scalar(x) for x in unit]
    try:
        return StructureConstantAlgebra.from_products(field, names, products, unit=unit, name=name)
    except ValidationError as exc:
        ctx.fail(str(exc))


def _ref(table: Dict[str, Any], name, ctx: _Ctx, kind: str):
    if not isinstance(name, str) or name not in table:
        ctx.fail(f"dangling {kind} reference {name!r}")
    return table[name]


def _parse_matrix(field, raw, dim, ctx: _Ctx) -> Matrix:
    if not isinstance(raw, list) or len(raw) != dim or any(not isinstance(r, list) or len(r) != dim for r in raw):
        ctx.fail(f"expected a {dim}x{dim} matrix")
    try:
        return Matrix(field, [[field.parse_scalar(x) for x in r] for r in raw], dim)
    except ValidationError as exc:
        ctx.fail(str(exc))


def parse_spec_text(text: str, path: Optional[str] = None) -> SpecDocument:
    try:
        raw = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path or '<spec>'}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except ValidationError as exc:
        raise ParseError(f"{path or '<spec>'}: {exc}") from None
    root = _Ctx("")
    if not isinstance(raw, dict):
        root.fail("top level must be an object")
    version = raw.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        root.sub("format_version").fail(f"unsupported version {version!r}")
    known = {"format_version", "field", "algebras", "extensions", "embeddings", "bimodules", "description"}
    extra = set(raw) - known
    if extra:
        root.fail(f"unknown sections {sorted(extra)}")
    try:
        field = FieldSpec.parse(_get(raw, "field", root, str))
    except ValidationError as exc:
        root.sub("field").fail(str(exc).split(": ", 1)[-1])
    doc = SpecDocument(version, field, path=path)

    algs = raw.get("algebras", {})
    if not isinstance(algs, dict):
        root.sub("algebras").fail("expected an object")
    for name, a in algs.items():
        doc.algebras[name] = _parse_algebra(field, name, a, root.sub("algebras").sub(name))

    exts = raw.get("extensions", {})
    for name, e in exts.items():
        ctx = root.sub("extensions").sub(name)
        F = _ref(doc.algebras, _get(e, "algebra", ctx), ctx.sub("algebra"), "algebra")
        gens = [F(_element_coords(F, g, ctx.sub("subring_generators").sub(t)))
                for t, g in enumerate(_get(e, "subring_generators", ctx, list, default=[]))]
        lb = e.get("left_basis")
        if lb is not None:
            lb = [F(_element_coords(F, f, ctx.sub("left_basis").sub(t))) for t, f in enumerate(lb)]
        try:
            doc.extensions[name] = ExtensionPresentation.from_generators(F, gens, left_basis=lb, name=name)
        except TightlabError as exc:
            ctx.fail(f"{type(exc).__name__}: {exc}")

    embs = raw.get("embeddings", {})
    for name, e in embs.items():
        ctx = root.sub("embeddings").sub(name)
        G = _ref(doc.algebras, _get(e, "g_algebra", ctx), ctx.sub("g_algebra"), "algebra")
        n = _get(e, "n", ctx, int)
        grids = []
        for t, grid in enumerate(_get(e, "image_basis", ctx, list)):
            c = ctx.sub("image_basis").sub(t)
            if not isinstance(grid, list) or len(grid) != n or any(not isinstance(r, list) or len(r) != n for r in grid):
                c.fail(f"expected an {n}x{n} grid")
            grids.append([[_element_coords(G, x, c.sub(i).sub(j)) for j, x in enumerate(r)] for i, r in enumerate(grid)])
        try:
            doc.embeddings[name] = EmbeddingModel(G, n, grids, name=name)
        except TightlabError as exc:
            ctx.fail(f"{type(exc).__name__}: {exc}")

    bims = raw.get("bimodules", {})
    for name, b in bims.items():
        ctx = root.sub("bimodules").sub(name)
        if isinstance(b, dict) and "from_extension" in b:
            E = _ref(doc.extensions, b["from_extension"], ctx.sub("from_extension"), "extension")
            M = bimodule_from_extension(E)
            M.name = name
        else:
            A = _ref(doc.algebras, _get(b, "left", ctx), ctx.sub("left"), "algebra")
            B = _ref(doc.algebras, _get(b, "right", ctx), ctx.sub("right"), "algebra")
            dim = _get(b, "dim", ctx, int)
            la = [_parse_matrix(field, mat, dim, ctx.sub("left_action").sub(t))
                  for t, mat in enumerate(_get(b, "left_action", ctx, list))]
            ra = [_parse_matrix(field, mat, dim, ctx.sub("right_action").sub(t))
                  for t, mat in enumerate(_get(b, "right_action", ctx, list))]
            try:
                M = BimoduleRep(A, B, dim, la, ra, name=name)
            except TightlabError as exc:
                ctx.fail(str(exc))
        rep = verify_bimodule(M)
        if not rep.ok:
            ctx.fail(f"bimodule axioms fail: {rep.witnesses[0]}")
        doc.bimodules[name] = M
    return doc


def parse_spec_file(path) -> SpecDocument:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from None
    try:
        return parse_spec_text(text, path=str(path))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


# serialization of exact values for reports and corpus files

def scalar_out(field: FieldSpec, x):
    return field.serialize(x)


def element_out(u: AlgebraElement):
    f = u.algebra.field
    return [f.serialize(c) for c in u.coords]


def coords_out(field: FieldSpec, coords):
    return [field.serialize(c) for c in coords]


def grid_out(field: FieldSpec, grid):
    return [[coords_out(field, entry) for entry in row] for row in grid]


def algebra_to_json(A: StructureConstantAlgebra) -> dict:
    f = A.field
    table = []
    for i in range(A.dim):
        for j in range(A.dim):
            if any(A.table[i][j]):
                table.append([A.names[i], A.names[j], coords_out(f, A.table[i][j])])
    out = {"basis": list(A.names), "table": table}
    if A.unit != tuple(f.one if t == 0 else f.zero for t in range(A.dim)):
        out["unit"] = coords_out(f, A.unit)
    return out


def load_corpus(name: str) -> SpecDocument:
    """Parse one of the spec files shipped in ``tightlab/corpus``."""
    return parse_spec_file(corpus_path(name))


def corpus_path(name: str) -> Path:
    return Path(__file__).parent / "corpus" / f"{name}.spec"


def corpus_names() -> List[str]:
    return sorted(p.stem for p in (Path(__file__).parent / "corpus").glob("*.spec"))
