"""Regenerate the shipped spec files in src/tightlab/corpus from the zoo algebras.

Embedding image bases are derived from the extensions (right action on the
left basis), so the files stay consistent with the library's phi.
"""

import json
from pathlib import Path

from tightlab import zoo
from tightlab.algebra import StructureConstantAlgebra, left_regular_rep
from tightlab.extension import ExtensionPresentation
from tightlab.scalars import FieldSpec
from tightlab.specfile import algebra_to_json, coords_out, grid_out
from tightlab.tightness import embed_from_extension

OUT = Path(__file__).resolve().parents[1] / "src" / "tightlab" / "corpus"


def ground(field):
    return StructureConstantAlgebra(field, ["1"], [[[1]]], name="k")


def gaussian():
    return zoo.simple_extension(FieldSpec.rationals(), [1, 0], var="i", name="qi")


def doc_for(F, gens, G_alg, description, extra_bimodules=None):
    field = F.field
    E = ExtensionPresentation.from_generators(F, [F.gen(g) for g in gens], name=F.name)
    model = embed_from_extension(E)
    doc = {
        "format_version": 1,
        "description": description,
        "field": field.name,
        "algebras": {F.name: algebra_to_json(F), G_alg.name: algebra_to_json(G_alg)},
        "extensions": {
            F.name: {
                "algebra": F.name,
                "subring_generators": [coords_out(field, F.gen(g).coords) for g in gens],
                "left_basis": [coords_out(field, f.coords) for f in E.left_basis],
            }
        },
        "embeddings": {
            F.name: {
                "g_algebra": G_alg.name,
                "n": model.n,
                "image_basis": [grid_out(field, g) for g in model.image_basis],
            }
        },
        "bimodules": {F.name: {"from_extension": F.name}},
    }
    if extra_bimodules:
        doc["bimodules"].update(extra_bimodules)
    return doc


def regular_reversed(F, k_alg):
    """F as an (F, k)-bimodule: F acts on the left, k on the right."""
    field = F.field
    left = [[coords_out(field, r) for r in left_regular_rep(e).entries] for e in F.basis()]
    ident = [[field.serialize(1 if i == j else 0) for j in range(F.dim)] for i in range(F.dim)]
    return {"left": F.name, "right": k_alg.name, "dim": F.dim, "left_action": left, "right_action": [ident]}


def dump(obj, indent=0):
    """JSON with objects spread over lines and arrays kept on one line."""
    if isinstance(obj, dict) and obj:
        pad = "  " * (indent + 1)
        body = ",\n".join(f"{pad}{json.dumps(k)}: {dump(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + "  " * indent + "}"
    return json.dumps(obj)


def main():
    Q = FieldSpec.rationals()
    docs = {}
    s2 = zoo.sqrt2()
    docs["sqrt2"] = doc_for(s2, [], ground(Q), "Q(sqrt 2) over Q, n = 2: tight",
                            {"sqrt2-rev": regular_reversed(s2, ground(Q))})
    docs["cbrt2"] = doc_for(zoo.cbrt2(), [], ground(Q),
                            "Q(cbrt 2) over Q, n = 3: 1- and 3-tight but not 2-tight; "
                            "its triangular ring has crystallographic type G_2")
    docs["f9"] = doc_for(zoo.f9(), [], ground(FieldSpec.prime(3)), "GF(9) over GF(3), n = 2: tight")
    docs["quat"] = doc_for(zoo.quaternions(), ["i"], gaussian(),
                           "Hamilton quaternions over Q(i), n = 2: tight with noncommutative F")
    sq = zoo.split_quaternions()
    docs["split-quat"] = {
        "format_version": 1,
        "description": "split quaternions (i^2 = 1): not a division ring",
        "field": "Q",
        "algebras": {sq.name: algebra_to_json(sq)},
    }
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in docs.items():
        path = OUT / f"{name}.spec"
        path.write_text(dump(doc) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
