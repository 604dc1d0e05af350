import io
import json
import subprocess
import sys

import pytest

from tightlab.cli import COMMANDS, main


def run(*argv):
    buf = io.BytesIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue().decode("utf-8")


def machine(*argv):
    code, text = run(*argv, "--format", "machine")
    return code, [json.loads(line) for line in text.splitlines()]


def summary(records):
    assert records[-1]["record"] == "summary"
    return records[-1]


@pytest.mark.parametrize(
    "argv, verdict, code",
    [
        (["tight", "--embedding", "sqrt2", "--expect", "tight"], "tight", 0),
        (["tight", "cbrt2", "--expect", "tight"], "not-tight", 1),
        (["tight", "cbrt2", "--a", "3"], "tight", 0),
        (["dimseq", "--extension", "cbrt2", "--max-len", "8"], "periodic", 0),
        (["dimseq", "sqrt2", "--max-len", "3"], "truncated", 0),
        (["check-algebra", "quat"], "division", 0),
        (["check-algebra", "split-quat", "--expect", "not-division"], "not-division", 0),
        (["ladder", "cbrt2"], "computed", 0),
        (["lemma12", "cbrt2"], "fails", 0),
        (["lemma12", "sqrt2"], "holds", 0),
        (["garcia", "cbrt2", "--expect", "consistent-negative"], "consistent-negative", 0),
        (["garcia", "sqrt2"], "consistent-positive", 0),
        (["catalog", "--n", "4"], "listed", 0),
        (["solve-block", "cbrt2", "--a", "2", "--block", "[[[1],[0]],[[0],[0]]]"], "obstructed", 0),
        (["solve-block", "sqrt2", "--a", "1", "--block", "[[[1],[0]]]"], "solved", 0),
        (["roundtrip", "sqrt2"], "identity", 0),
        (["roundtrip", "--extension", "quat"], "identity", 0),
        (["transporter", "sqrt2", "--h1", "[[1,0]]", "--h2", "[[0,1]]"], "found", 0),
        (["audit-T", "cbrt2", "--k-max", "2"], "fails", 0),
        (["audit-Tn", "cbrt2", "--expect", "passes"], "fails", 1),
        (["audit-Tn1", "cbrt2", "--expect", "passes"], "passes", 0),
        (["audit-Tn", "f9"], "passes", 0),
    ],
)
def test_verdicts_and_exit_codes(argv, verdict, code):
    got_code, records = machine(*argv)
    assert summary(records)["verdict"] == verdict
    assert summary(records)["exit_code"] == got_code == code


def test_tight_cbrt2_flags():
    _, records = machine("tight", "cbrt2")
    flags = next(r for r in records if r.get("kind") == "tightness")["flags"]
    assert flags == [True, False, True]


def test_dimseq_entries():
    _, records = machine("dimseq", "--extension", "cbrt2", "--max-len", "8")
    res = next(r for r in records if r["record"] == "result")
    assert res["entries"] == [1, 3, 1, 3, 1, 3, 1, 3]
    assert res["period"] == 2 and res["truncated"] is False


def test_split_quat_certificate():
    _, records = machine("check-algebra", "split-quat")
    res = next(r for r in records if r.get("kind") == "division-probe")
    assert res["certificate"] == ["1", "-1", "0", "0"]


def test_catalog_needs_no_specfile():
    _, records = machine("catalog", "--n", "4")
    pairs = [(r["t"], r["s"]) for r in records if r["record"] == "result"]
    assert len(pairs) == 6 and (1, 1) in pairs


@pytest.mark.parametrize(
    "argv, error",
    [
        (["bogus", "sqrt2"], "UnknownCommand"),
        (["tight", "/nonexistent/x.spec"], "ParseError"),
        (["tight", "sqrt2", "--expect", "bogus"], "ValidationError"),
        (["tight", "sqrt2", "--embedding", "nope"], "UnknownObject"),
        (["tight", "sqrt2", "--seed", "x"], "UsageError"),
        (["solve-block", "sqrt2", "--a", "1"], "ValidationError"),
        (["tight", "sqrt2", "--a", "7"], "IndexOutOfRange"),
    ],
)
def test_input_errors_exit_two(argv, error):
    code, records = machine(*argv)
    assert code == 2
    err = next(r for r in records if r["record"] == "error")
    assert err["type"] == error


def test_text_format():
    code, text = run("tight", "--embedding", "sqrt2", "--expect", "tight")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("tight ")
    assert "verdict: tight (expected tight)" in lines
    assert lines[-1] == "exit: 0"


def test_machine_records_are_sorted_compact_json():
    _, text = run("ladder", "cbrt2", "--format", "machine")
    for line in text.splitlines():
        obj = json.loads(line)
        assert line == json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    first = json.loads(text.splitlines()[0])
    assert first["record"] == "header" and first["command"] == "ladder"
    assert "timing_s" not in first


def test_timing_only_on_request():
    _, records = machine("tight", "sqrt2", "--timing")
    assert "timing_s" in records[0]


@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_every_command_is_deterministic(command):
    argv = {"catalog": ["catalog", "--n", "3"], "solve-block": ["solve-block", "sqrt2", "--a", "1", "--block", "[[[0],[1]]]"],
            "transporter": ["transporter", "sqrt2", "--h1", "[[1,0]]", "--h2", "[[1,1]]"]}.get(command, [command, "cbrt2"])
    first = run(*argv, "--format", "machine")
    second = run(*argv, "--format", "machine")
    assert first == second
    assert first[0] in (0, 1)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tightlab", "tight", "--embedding", "sqrt2", "--expect", "tight"],
                          capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout.endswith(b"exit: 0\n")
