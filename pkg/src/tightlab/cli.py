"""Command-line front end: ``tightlab <command> [options] [SPECFILE]``.

Every command loads and validates a spec document, runs one library
operation, and prints a report.  Exit codes: 0 success, 1 a property failed
(the verdict differs from ``--expect`` or an internal cross-check
disagrees), 2 malformed input (parse or validation errors, unknown command
or object, bad option values).

When SPECFILE is omitted, or names no existing file, the shipped corpus file
called after the selected object (or SPECFILE itself) is used, so
``tightlab tight --embedding sqrt2`` works out of the box.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .algebra import AlgebraElement, Subspace, division_probe, verify_algebra
from .audit import TFragmentModel, audit_T_fragment, audit_Tn, audit_Tn1, passes
from .bimodule import DEFAULT_MAX_LEN, bimodule_from_extension, dimension_sequence
from .errors import (
    NotOneTight,
    ParseError,
    TightlabError,
    UnknownCommand,
    UnknownObject,
    ValidationError,
)
from .extension import (
    coxeter_catalog,
    garcia_report,
    lemma_regular_check,
    ladder_by_containment,
    left_span,
    transporter,
)
from .scalars import Residue
from .specfile import SpecDocument, corpus_names, corpus_path, parse_spec_file
from .tightness import (
    embed_from_extension,
    extension_from_tight,
    is_a_tight,
    is_tight,
    roundtrip_model,
    solve_for_block,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2

REPORT_VERSION = 1


@dataclass
class RunReport:
    command: str
    inputs: Dict[str, Any]
    seed: int
    results: List[Dict[str, Any]] = dc_field(default_factory=list)
    verdict: Optional[str] = None
    expect: Optional[str] = None
    inconsistencies: List[str] = dc_field(default_factory=list)
    timing: Optional[float] = None
    error: Optional[Dict[str, str]] = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_INPUT
        if self.inconsistencies:
            return EXIT_PROPERTY
        if self.expect is not None and self.expect != self.verdict:
            return EXIT_PROPERTY
        return EXIT_OK

    def add(self, kind: str, **fields):
        self.results.append({"kind": kind, **fields})


def to_json(value):
    """Exact, JSON-ready form of library values."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Residue):
        return value.value
    if isinstance(value, AlgebraElement):
        f = value.algebra.field
        return [f.serialize(c) for c in value.coords]
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    return str(value)


# commands


@dataclass(frozen=True)
class Command:
    run: Callable[[SpecDocument, argparse.Namespace, RunReport], None]
    kind: Optional[str]  # object kind selected by the command, if any
    verdicts: Sequence[str]


def _pick(doc: SpecDocument, kind: str, name: Optional[str]):
    table = getattr(doc, kind + "s")
    if name is None:
        if len(table) == 1:
            return next(iter(table.values()))
        stem = Path(doc.path).stem if doc.path else None
        if stem in table:
            return table[stem]
        raise UnknownObject(f"choose one of the {kind}s {sorted(table)} with --{kind}")
    if name not in table:
        raise UnknownObject(f"no {kind} named {name!r} (have {sorted(table)})")
    return table[name]


def _cmd_check_algebra(doc, args, rep):
    A = _pick(doc, "algebra", args.algebra)
    report = verify_algebra(A)
    rep.add("table", algebra=A.name, dim=A.dim, associative=report.associative, unital=report.unital,
            associativity_witnesses=report.associativity_witnesses[:3], unit_witnesses=report.unit_witnesses[:3])
    if not report.ok:
        rep.verdict = "not-algebra"
        return
    probe = division_probe(A, args.seed)
    rep.add("division-probe", verdict=probe.verdict, exhaustive=probe.exhaustive, checked=probe.checked,
            element=probe.element, certificate=probe.certificate)
    rep.verdict = "not-division" if probe.certified_not_division else "division"


def _cmd_ladder(doc, args, rep):
    E = _pick(doc, "extension", args.extension)
    lad = E.ladder
    S2, D2 = ladder_by_containment(E)
    for k in range(E.n):
        rep.add("rung", k=k, dim_L=lad.L[k].dim, dim_S=lad.S[k].dim, dim_D=lad.D[k].dim,
                dim_D_over_S=lad.dims_over_S[k])
        if S2[k] != lad.S[k] or D2[k] != lad.D[k]:
            rep.inconsistencies.append(f"rung {k}: block and containment ladders differ")
    rep.add("ladder", n=E.n, dims_over_S=lad.dims_over_S)
    rep.verdict = "computed"


def _cmd_lemma12(doc, args, rep):
    E = _pick(doc, "extension", args.extension)
    ks = [args.k] if args.k is not None else range(1, E.n)
    all_hold = True
    for k in ks:
        chk = lemma_regular_check(E, k)
        all_hold &= chk.holds
        rep.add("regular-split", k=k, holds=chk.holds, span_dim=chk.span_dim, ambient_dim=chk.ambient_dim)
    rep.verdict = "holds" if all_hold else "fails"


def _parse_elements(F, raw: str, flag: str):
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{flag}: {exc.msg}") from None
    if not isinstance(data, list) or any(not isinstance(v, list) or len(v) != F.dim for v in data):
        raise ValidationError(f"{flag}: expected a list of {F.dim}-coordinate vectors")
    return [F([F.field.parse_scalar(x) for x in v]) for v in data]


def _cmd_transporter(doc, args, rep):
    E = _pick(doc, "extension", args.extension)
    if args.h1 is None or args.h2 is None:
        raise ValidationError("transporter needs --h1 and --h2")
    H1 = left_span(E.G, _parse_elements(E.F, args.h1, "--h1"))
    H2 = left_span(E.G, _parse_elements(E.F, args.h2, "--h2"))
    a = transporter(E, H1, H2)
    rep.add("transporter", dim_H1=H1.dim, dim_H2=H2.dim, a=a)
    if a is not None and H1.right_mul(a) != H2:
        rep.inconsistencies.append("returned element does not map H1 onto H2")
    rep.verdict = "found" if a is not None else "none"


def _cmd_garcia(doc, args, rep):
    E = _pick(doc, "extension", args.extension)
    g = garcia_report(E, args.seed)
    for k, c in enumerate(g.condition2):
        rep.add("condition2", k=k, dim_D_over_S=g.dims_over_S[k], holds=c)
    rep.add("sequence", n=g.n, sequence=g.sequence, target=g.target, match=g.sequence_match)
    if g.verdict == "inconsistent":
        rep.inconsistencies.append("ladder condition and dimension sequence disagree")
    rep.verdict = g.verdict


def _cmd_catalog(doc, args, rep):
    n = args.n
    if n is None:
        n = _pick(doc, "extension", args.extension).n
    for t, s in coxeter_catalog(n):
        rep.add("dimension-vector", t=t, s=s)
    rep.verdict = "listed"


def _cmd_tight(doc, args, rep):
    M = _pick(doc, "embedding", args.embedding)
    if args.a is not None:
        per = (is_a_tight(M, args.a),)
        tight = per[0].tight
    else:
        t = is_tight(M)
        per, tight = t.per_a, t.tight
    for x in per:
        rep.add("a-tightness", a=x.a, tight=x.tight, rank=x.rank, required_rank=x.required_rank)
    rep.add("tightness", flags=[x.tight for x in per])
    rep.verdict = "tight" if tight else "not-tight"


def _cmd_solve_block(doc, args, rep):
    M = _pick(doc, "embedding", args.embedding)
    if args.a is None or args.block is None:
        raise ValidationError("solve-block needs --a and --block")
    try:
        block = json.loads(args.block)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--block: {exc.msg}") from None
    f = M.G.field
    try:
        block = [[[f.parse_scalar(x) for x in entry] for entry in row] for row in block]
    except TypeError:
        raise ValidationError("--block: expected rows of G-coordinate vectors") from None
    sol = solve_for_block(M, args.a, block)
    if sol.solved:
        rep.add("solution", a=args.a, coords=sol.coords, element=sol.element)
        rep.verdict = "solved"
    else:
        rep.add("obstruction", a=args.a, functional=sol.obstruction)
        rep.verdict = "obstructed"


def _cmd_roundtrip(doc, args, rep):
    if args.extension is not None or (args.embedding is None and not doc.embeddings):
        E = _pick(doc, "extension", args.extension)
        back = extension_from_tight(embed_from_extension(E))
        same = back.ladder.dims_over_S == E.ladder.dims_over_S and back.n == E.n
        rep.add("extension-roundtrip", extension=E.name, n=E.n, dims_over_S=E.ladder.dims_over_S,
                recovered_dims_over_S=back.ladder.dims_over_S, identical=same)
    else:
        M = _pick(doc, "embedding", args.embedding)
        try:
            again = roundtrip_model(M)
        except NotOneTight:
            rep.add("embedding-roundtrip", embedding=M.name, one_tight=False)
            rep.verdict = "not-1-tight"
            return
        same = again.image_subspace() == M.image_subspace()
        rep.add("embedding-roundtrip", embedding=M.name, one_tight=True, dim=M.dim, identical=same)
    if not same:
        rep.inconsistencies.append("round trip changed the object")
    rep.verdict = "identity" if same else "mismatch"


def _cmd_dimseq(doc, args, rep):
    if args.bimodule is not None or (args.extension is None and doc.bimodules and not doc.extensions):
        M = _pick(doc, "bimodule", args.bimodule)
    else:
        M = bimodule_from_extension(_pick(doc, "extension", args.extension))
    if args.max_len < 1:
        raise ValidationError("--max-len must be positive")
    seq = dimension_sequence(M, max_len=args.max_len, seed=args.seed)
    rep.add("dimension-sequence", entries=seq.entries, period=seq.period, truncated=seq.truncated,
            rings=[list(p) for p in seq.ring_pairs])
    rep.verdict = "truncated" if seq.truncated else "periodic"


def _emit_axioms(rep, verdicts):
    for v in verdicts:
        rep.add("axiom", axiom=v.axiom_id, status=v.status, witness=v.witness, note=v.note)
    rep.verdict = "passes" if passes(verdicts) else "fails"


def _cmd_audit_T(doc, args, rep):
    E = _pick(doc, "extension", args.extension)
    k_max = args.k_max if args.k_max is not None else max(E.n - 1, 1)
    _emit_axioms(rep, audit_T_fragment(TFragmentModel(E, k_max), args.seed))


def _cmd_audit_Tn(doc, args, rep):
    _emit_axioms(rep, audit_Tn(_pick(doc, "embedding", args.embedding), args.seed))


def _cmd_audit_Tn1(doc, args, rep):
    _emit_axioms(rep, audit_Tn1(_pick(doc, "embedding", args.embedding), args.seed))


AUDIT = ("passes", "fails")
COMMANDS: Dict[str, Command] = {
    "check-algebra": Command(_cmd_check_algebra, "algebra", ("division", "not-division", "not-algebra")),
    "ladder": Command(_cmd_ladder, "extension", ("computed",)),
    "lemma12": Command(_cmd_lemma12, "extension", ("holds", "fails")),
    "transporter": Command(_cmd_transporter, "extension", ("found", "none")),
    "garcia": Command(_cmd_garcia, "extension",
                      ("consistent-positive", "consistent-negative", "inconsistent", "not-applicable")),
    "catalog": Command(_cmd_catalog, None, ("listed",)),
    "tight": Command(_cmd_tight, "embedding", ("tight", "not-tight")),
    "solve-block": Command(_cmd_solve_block, "embedding", ("solved", "obstructed")),
    "roundtrip": Command(_cmd_roundtrip, None, ("identity", "mismatch", "not-1-tight")),
    "dimseq": Command(_cmd_dimseq, None, ("periodic", "truncated")),
    "audit-T": Command(_cmd_audit_T, "extension", AUDIT),
    "audit-Tn": Command(_cmd_audit_Tn, "embedding", AUDIT),
    "audit-Tn1": Command(_cmd_audit_Tn1, "embedding", AUDIT),
}


def run_command(doc: SpecDocument, command: str, args: argparse.Namespace) -> RunReport:
    """Run one command on a loaded document; input errors propagate as exceptions."""
    if command not in COMMANDS:
        raise UnknownCommand(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    spec = COMMANDS[command]
    expect = getattr(args, "expect", None)
    if expect is not None and expect not in spec.verdicts:
        raise ValidationError(f"--expect for {command} must be one of {', '.join(spec.verdicts)}")
    rep = RunReport(command, _inputs(args, doc), args.seed, expect=expect)
    spec.run(doc, args, rep)
    return rep


def _inputs(args, doc: Optional[SpecDocument]) -> Dict[str, Any]:
    out = {}
    for key in ("algebra", "extension", "embedding", "bimodule", "k", "k_max", "n", "a", "block", "h1", "h2"):
        value = getattr(args, key, None)
        if value is not None:
            out[key.replace("_", "-")] = value
    if getattr(args, "command", None) == "dimseq":
        out["max-len"] = args.max_len
    spec = getattr(args, "resolved_spec", None)
    if spec is not None:
        out["specfile"] = spec
    return out


# report output


def emit_report(report: RunReport, fmt: str = "text") -> bytes:
    if fmt == "machine":
        return _emit_machine(report)
    return _emit_text(report)


def _record(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _emit_machine(report: RunReport) -> bytes:
    header = {"record": "header", "report_version": REPORT_VERSION, "command": report.command,
              "inputs": report.inputs, "seed": report.seed}
    if report.timing is not None:
        header["timing_s"] = f"{report.timing:.3f}"
    lines = [_record(header)]
    if report.error is not None:
        lines.append(_record({"record": "error", **report.error}))
    for r in report.results:
        lines.append(_record({"record": "result", **r}))
    lines.append(_record({"record": "summary", "verdict": report.verdict, "expect": report.expect,
                          "inconsistencies": report.inconsistencies, "exit_code": report.exit_code}))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _text_value(v) -> str:
    v = to_json(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"), ensure_ascii=False)
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _emit_text(report: RunReport) -> bytes:
    inputs = " ".join(f"{k}={_text_value(v)}" for k, v in report.inputs.items())
    lines = [f"{report.command} {inputs} seed={report.seed}".replace("  ", " ")]
    if report.error is not None:
        lines.append(f"error: {report.error['type']}: {report.error['message']}")
    for r in report.results:
        fields = " ".join(f"{k}={_text_value(v)}" for k, v in r.items() if k != "kind")
        lines.append(f"  {r['kind']}: {fields}")
    for msg in report.inconsistencies:
        lines.append(f"  inconsistency: {msg}")
    if report.verdict is not None:
        expect = f" (expected {report.expect})" if report.expect is not None else ""
        lines.append(f"verdict: {report.verdict}{expect}")
    if report.timing is not None:
        lines.append(f"time: {report.timing:.3f}s")
    lines.append(f"exit: {report.exit_code}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# argument handling


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tightlab", description="Exact checks for division-ring extensions and tight embeddings.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("specfile", nargs="?", help="spec file; defaults to the shipped corpus entry")
    sel = p.add_argument_group("object selection")
    sel.add_argument("--algebra")
    sel.add_argument("--extension")
    sel.add_argument("--embedding")
    sel.add_argument("--bimodule")
    p.add_argument("--expect", help="verdict the run must produce, else exit 1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--k", type=int, help="lemma12: a single rung")
    p.add_argument("--k-max", type=int, help="audit-T: highest k for the schemas")
    p.add_argument("--n", type=int, help="catalog: size")
    p.add_argument("--a", type=int, help="tight / solve-block: block height")
    p.add_argument("--block", help="solve-block: JSON a x b grid of G-coordinate vectors")
    p.add_argument("--h1", help="transporter: JSON list of F-vectors spanning H1")
    p.add_argument("--h2", help="transporter: JSON list of F-vectors spanning H2")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-determinism)")
    return p


def resolve_specfile(specfile: Optional[str], args) -> Optional[Path]:
    """An existing path, else the corpus entry named by SPECFILE or by the selected object."""
    if specfile is not None:
        path = Path(specfile)
        if path.exists() or specfile not in corpus_names():
            return path
        return corpus_path(specfile)
    for key in ("embedding", "extension", "bimodule", "algebra"):
        name = getattr(args, key, None)
        if name is not None and name in corpus_names():
            return corpus_path(name)
    return None


def _display_path(path: Path) -> str:
    try:
        path.resolve().relative_to(corpus_path("x").parent.resolve())
        return f"corpus:{path.stem}"
    except ValueError:
        return str(path)


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout.buffer
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    fmt = "machine" if "machine" in argv and "--format" in argv else "text"
    try:
        args = parser.parse_intermixed_args(argv)
    except _UsageError as exc:
        rep = RunReport(argv[0] if argv else "", {}, 0, error={"type": "UsageError", "message": str(exc)})
        _write(out, emit_report(rep, fmt))
        return rep.exit_code
    fmt = args.format
    rep = RunReport(args.command, {}, args.seed, expect=args.expect)
    start = time.perf_counter()
    try:
        if args.command not in COMMANDS:
            raise UnknownCommand(f"unknown command {args.command!r}; choose from {', '.join(COMMANDS)}")
        doc = SpecDocument(1, None)
        path = resolve_specfile(args.specfile, args)
        if path is None:
            if args.command != "catalog" or args.n is None:
                raise ParseError("no SPECFILE given and no corpus entry matches the selected object")
        else:
            args.resolved_spec = _display_path(path)
            doc = parse_spec_file(path)
        rep = run_command(doc, args.command, args)
    except TightlabError as exc:
        rep.inputs = _inputs(args, None)
        rep.error = {"type": type(exc).__name__, "message": str(exc)}
    if args.timing:
        rep.timing = time.perf_counter() - start
    _write(out, emit_report(rep, fmt))
    return rep.exit_code


def _write(out, data: bytes):
    # one write per report so concurrent runs never interleave partial reports
    out.write(data)
    out.flush()


if __name__ == "__main__":
    sys.exit(main())
