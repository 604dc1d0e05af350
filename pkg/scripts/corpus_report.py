"""One-line summaries of every shipped corpus object."""

from tightlab.algebra import division_probe
from tightlab.bimodule import dimension_sequence
from tightlab.extension import garcia_report
from tightlab.specfile import corpus_names, load_corpus
from tightlab.tightness import is_tight


def fmt(seq):
    return "(" + ",".join(str(x) for x in seq) + ")"


def main():
    for name in corpus_names():
        doc = load_corpus(name)
        print(f"[{name}] field {doc.field.name}")
        for a_name, A in doc.algebras.items():
            print(f"  algebra {a_name}: dim {A.dim}, {division_probe(A).verdict}")
        for e_name, E in doc.extensions.items():
            g = garcia_report(E)
            print(f"  extension {e_name}: n={E.n} D/S dims {fmt(E.ladder.dims_over_S)} "
                  f"sequence {fmt(g.sequence)} target {fmt(g.target)} -> {g.verdict}")
        for m_name, M in doc.embeddings.items():
            flags = "".join("T" if f else "F" for f in is_tight(M).flags)
            print(f"  embedding {m_name}: n={M.n} dim_k {M.dim} tightness {flags}")
        for b_name, B in doc.bimodules.items():
            seq = dimension_sequence(B, max_len=6)
            print(f"  bimodule {b_name}: ({B.A.name}, {B.B.name}) sequence {fmt(seq.entries)} period {seq.period}")


if __name__ == "__main__":
    main()
