import json

import pytest
from hypothesis import given

from tightlab.errors import ParseError, ValidationError
from tightlab.scalars import FieldSpec
from tightlab.specfile import (
    algebra_to_json,
    corpus_names,
    corpus_path,
    load_corpus,
    parse_spec_file,
    parse_spec_text,
)
from tightlab.tightness import is_tight

from conftest import coords, small_ints

GROUND = {"basis": ["1"], "table": [["1", "1", ["1"]]]}


def minimal(**extra):
    doc = {"format_version": 1, "field": "Q", "algebras": {"k": GROUND}}
    doc.update(extra)
    return json.dumps(doc)


def test_corpus_contents():
    assert set(corpus_names()) >= {"sqrt2", "cbrt2", "f9", "quat", "split-quat"}
    doc = load_corpus("sqrt2")
    assert list(doc.extensions) == ["sqrt2"]
    assert list(doc.embeddings) == ["sqrt2"]
    assert set(doc.algebras) == {"sqrt2", "k"}
    assert set(doc.bimodules) == {"sqrt2", "sqrt2-rev"}
    assert doc.field == FieldSpec.rationals()


@pytest.mark.parametrize("name", ["sqrt2", "cbrt2", "f9", "quat", "split-quat"])
def test_corpus_files_parse_from_disk(name):
    doc = parse_spec_file(corpus_path(name))
    assert name in doc.algebras


def test_corpus_tightness_flags():
    assert is_tight(load_corpus("f9").embeddings["f9"]).flags == (True, True)
    assert is_tight(load_corpus("cbrt2").embeddings["cbrt2"]).flags == (True, False, True)


def test_non_prime_field_rejected():
    with pytest.raises(ValidationError):
        parse_spec_text(minimal().replace('"Q"', '"GF(4)"'))


def test_dangling_reference_is_named():
    text = minimal(extensions={"e": {"algebra": "missing"}})
    with pytest.raises(ValidationError, match="missing"):
        parse_spec_text(text)


def test_duplicate_keys_rejected():
    text = '{"format_version": 1, "field": "Q", "field": "Q"}'
    with pytest.raises(ParseError, match="duplicate"):
        parse_spec_text(text)


@pytest.mark.parametrize(
    "text",
    ["{", "[]", '{"field": "Q", "extra": 1}', '{"format_version": 2, "field": "Q"}'],
    ids=["truncated", "not-object", "unknown-section", "version"],
)
def test_malformed_documents(text):
    with pytest.raises((ParseError, ValidationError)):
        parse_spec_text(text)


def test_parse_error_has_location():
    with pytest.raises(ParseError, match=r"x\.spec:2:"):
        parse_spec_text('{\n  "field": Q}', path="x.spec")


def test_missing_file():
    with pytest.raises(ParseError):
        parse_spec_file("/nonexistent/never.spec")


def test_non_associative_algebra_rejected():
    table = algebra_to_json(load_corpus("quat").algebras["quat"])
    entry = next(e for e in table["table"] if e[:2] == ["i", "j"])
    entry[2] = [("-" + x if x != "0" else x) for x in entry[2]]
    with pytest.raises(ValidationError, match="non-associative"):
        parse_spec_text(json.dumps({"field": "Q", "algebras": {"bad": table}}))


def test_corrupt_embedding_rejected():
    emb = {"g_algebra": "k", "n": 2, "image_basis": [[[["1"], ["0"]], [["0"], ["1"]]], [[["1"], ["0"]], [["0"], ["0"]]]]}
    with pytest.raises(ValidationError, match="embeddings"):
        parse_spec_text(minimal(embeddings={"e": emb}))


@given(coords(3, small_ints))
def test_algebra_json_roundtrip(v):
    A = load_corpus("cbrt2").algebras["cbrt2"]
    again = parse_spec_text(json.dumps({"field": "Q", "algebras": {"cbrt2": algebra_to_json(A)}})).algebras["cbrt2"]
    x = A(v)
    y = again(v)
    assert (x * x).coords == (y * y).coords
