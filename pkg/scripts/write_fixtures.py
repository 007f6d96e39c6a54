#!/usr/bin/env python3
"""Regenerate the fixtures/ corpus from the programmatic builders."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hlc.fixtures import (
    build_hgr1,
    build_hgr2,
    build_sgr,
    build_sgr_hrg,
    build_syntree_hrg,
    sgr_string_graph,
    syntree,
)
from hlc.fmt import print_graph, print_hl_grammar, print_hrg, print_sequent
from hlc.graphs import handle, string_graph
from hlc.hltypes import Primitive, Sequent
from hlc.suites import kite_graph


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(exist_ok=True)
    (out / "sgr.hlg").write_text(print_hl_grammar(build_sgr()))
    (out / "hgr1.hlg").write_text(print_hl_grammar(build_hgr1()))
    (out / "hgr2.hlg").write_text(print_hl_grammar(build_hgr2()))
    (out / "sgr_equiv.hrg").write_text(print_hrg(build_sgr_hrg()))
    (out / "syntree.hrg").write_text(print_hrg(build_syntree_hrg()))
    (out / "syntree.hgf").write_text(print_graph(syntree()))
    (out / "aabbb.hgf").write_text(print_graph(sgr_string_graph("aabbb")))
    (out / "kite.hgf").write_text(print_graph(kite_graph()))

    sgr = build_sgr()
    q, p, s = (t for _, t in sgr.correspondence)
    (out / "sgr_aabbb.seq").write_text(
        print_sequent(Sequent(string_graph([q, q, s, p, p]), sgr.distinguished))
    )
    p2 = Primitive("p", 2)
    (out / "axiom_p.seq").write_text(print_sequent(Sequent(handle(p2), p2)))

    # A tiny valuation over one rank-2 primitive.
    (out / "g_a.hgf").write_text(print_graph(sgr_string_graph("a")))
    (out / "g_ab.hgf").write_text(print_graph(sgr_string_graph("ab")))
    (out / "w.val").write_text("p/2 = { g_a.hgf , g_ab.hgf }\n")
    print(f"wrote fixtures to {out}")


if __name__ == "__main__":
    main()
