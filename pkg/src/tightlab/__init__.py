"""Exact computations with division-ring extensions, tight embeddings and bimodule duals."""

from .algebra import AlgebraElement, StructureConstantAlgebra, Subspace, division_probe, invert, verify_algebra
from .bimodule import BimoduleRep, dimension_sequence, right_dual
from .extension import ExtensionPresentation, garcia_report
from .scalars import FieldSpec, Residue
from .specfile import load_corpus, parse_spec_file
from .tightness import EmbeddingModel, is_a_tight, is_tight

__all__ = [
    "AlgebraElement",
    "BimoduleRep",
    "EmbeddingModel",
    "ExtensionPresentation",
    "FieldSpec",
    "Residue",
    "StructureConstantAlgebra",
    "Subspace",
    "dimension_sequence",
    "division_probe",
    "garcia_report",
    "invert",
    "is_a_tight",
    "is_tight",
    "load_corpus",
    "parse_spec_file",
    "right_dual",
    "verify_algebra",
]
