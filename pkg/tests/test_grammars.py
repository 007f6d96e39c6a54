from __future__ import annotations

import random

import pytest

from hlc.calculus import check_derivation
from hlc.canon import canonical_key, isomorphic
from hlc.fixtures import (
    build_hgr1,
    build_hgr2,
    build_sgr,
    build_sgr_hrg,
    build_syntree_hrg,
    sgr_string_graph,
    syntree,
    STAR,
)
from hlc.grammars import (
    HRG,
    HLGrammar,
    MemberWitness,
    NotMember,
    Production,
    hl_member,
    hrg_generate,
    hrg_member,
    is_wgnf,
    type_set,
    validate_hl_grammar,
    validate_hrg,
    wgnf_to_hl,
)
from hlc.graphs import RankedLabel, build_graph, dollar, handle, replace, string_graph
from hlc.hltypes import Division, Primitive


def test_type_set_sizes():
    assert len(type_set(build_sgr())) == 3
    assert len(type_set(build_hgr1())) == 16
    assert len(type_set(build_hgr2())) == 16
    empty = HLGrammar(alphabet=(STAR,), distinguished=Primitive("s", 0), correspondence=())
    assert type_set(empty) == []


def test_grammar_validation():
    assert validate_hl_grammar(build_sgr()) is None
    assert validate_hl_grammar(build_hgr1()) is None
    assert validate_hl_grammar(build_hgr2()) is None
    bad = HLGrammar(
        alphabet=(RankedLabel("a", 2),),
        distinguished=Primitive("s", 2),
        correspondence=((RankedLabel("a", 2), Primitive("s", 1)),),
    )
    assert "rank mismatch" in validate_hl_grammar(bad)
    assert validate_hrg(build_syntree_hrg()) is None
    assert validate_hrg(build_sgr_hrg()) is None


def test_sgr_membership(prover):
    sgr = build_sgr()
    member = hl_member(sgr, sgr_string_graph("aabbb"), prover=prover)
    assert isinstance(member, MemberWitness)
    # The witness relabels the two a-edges by the division and the b-edges by
    # one s and two p's.
    labels = sorted(repr(t) for t in member.assignment.values())
    assert sum(1 for t in member.assignment.values() if isinstance(t, Division)) == 2
    assert check_derivation(member.tree) is None
    rejected = hl_member(sgr, sgr_string_graph("ab"), prover=prover)
    assert isinstance(rejected, NotMember)


def test_member_witness_respects_correspondence(prover):
    sgr = build_sgr()
    g = sgr_string_graph("abb")
    member = hl_member(sgr, g, prover=prover)
    assert isinstance(member, MemberWitness)
    for e, t in member.assignment.items():
        assert any(a == g.lab[e] and t == tt for a, tt in sgr.correspondence)


def test_member_rejects_unknown_labels(prover):
    sgr = build_sgr()
    stray = string_graph([RankedLabel("z", 2)])
    with pytest.raises(ValueError):
        hl_member(sgr, stray, prover=prover)


def test_hgr1_single_edge_and_isolated(prover):
    hgr1 = build_hgr1()
    edge = build_graph([0, 1], [(STAR, (0, 1))], ())
    member = hl_member(hgr1, edge, prover=prover)
    assert isinstance(member, MemberWitness)
    lonely = build_graph([0, 1, 2], [(STAR, (0, 1))], ())
    assert isinstance(hl_member(hgr1, lonely, prover=prover), NotMember)


def test_membership_is_isomorphism_invariant(prover):
    from tests.test_canon import permute

    sgr = build_sgr()
    rng = random.Random(4)
    for word, expected in (("abb", True), ("bab", False)):
        g = sgr_string_graph(word)
        for _ in range(5):
            twin = permute(g, rng)
            got = isinstance(hl_member(sgr, twin, prover=prover), MemberWitness)
            assert got == expected


def test_hrg_generate_syntree():
    hrg = build_syntree_hrg()
    graphs = hrg_generate(hrg, max_edges=8, max_steps=8)
    target = canonical_key(syntree())
    assert any(canonical_key(g) == target for g in graphs)


def test_hrg_generate_string_language():
    hrg = build_sgr_hrg()
    graphs = hrg_generate(hrg, max_edges=7, max_steps=15)
    got = {canonical_key(g) for g in graphs}
    want = {canonical_key(sgr_string_graph(w)) for w in ("b", "abb", "aabbb", "aaabbbb")}
    assert got == want


def test_hrg_generate_nonterminating():
    s = RankedLabel("S", 2)
    hrg = HRG(
        nonterminals=(s,),
        terminals=(RankedLabel("a", 2),),
        productions=(Production(s, string_graph([s])),),
        start=s,
    )
    assert hrg_generate(hrg, max_edges=4, max_steps=6) == []


def test_hrg_generate_closed_under_one_step():
    hrg = build_sgr_hrg()
    max_edges, max_steps = 5, 10
    reachable = {}
    frontier = [handle(hrg.start)]
    seen = set()
    while frontier:
        g = frontier.pop()
        key = canonical_key(g)
        if key in seen:
            continue
        seen.add(key)
        nts = [e for e in g.edges if g.lab[e] in set(hrg.nonterminals)]
        if not nts:
            reachable[key] = g
        for e in nts:
            for prod in hrg.productions:
                if prod.lhs == g.lab[e]:
                    succ = replace(g, e, prod.rhs)
                    if len(succ.edges) <= max_edges:
                        frontier.append(succ)
    generated = {canonical_key(g) for g in hrg_generate(hrg, max_edges, max_steps)}
    assert generated == set(reachable)


def test_hrg_member_examples():
    tree_hrg = build_syntree_hrg()
    assert hrg_member(tree_hrg, syntree())
    # Swapping the order markers on the root makes the tree ungrammatical.
    swapped = syntree()
    att = dict(swapped.att)
    att[3], att[4] = att[4], att[3]
    from hlc.graphs import Hypergraph

    mutant = Hypergraph(swapped.nodes, swapped.edges, att, dict(swapped.lab), swapped.ext)
    assert not hrg_member(tree_hrg, mutant)
    unknown = build_graph([0], [(RankedLabel("dog", 1), (0,))], (0,))
    assert not hrg_member(tree_hrg, unknown)


def test_is_wgnf():
    assert is_wgnf(build_syntree_hrg())
    undeclared = build_syntree_hrg()
    strict = HRG(
        nonterminals=undeclared.nonterminals,
        terminals=undeclared.terminals,
        productions=undeclared.productions,
        start=undeclared.start,
        fixed=frozenset(),
    )
    assert not is_wgnf(strict)  # l and r then count as designated terminals
    assert is_wgnf(build_sgr_hrg())
    s = RankedLabel("S", 2)
    a, b = RankedLabel("a", 2), RankedLabel("b", 2)
    two_terminals = HRG(
        nonterminals=(s,),
        terminals=(a, b),
        productions=(Production(s, string_graph([a, b])),),
        start=s,
    )
    assert not is_wgnf(two_terminals)


def test_wgnf_to_hl_matches_string_grammar():
    converted = wgnf_to_hl(build_sgr_hrg())
    sgr = build_sgr()
    # Same shape as the hand-built grammar up to primitive renaming:
    # one division for a, two bare primitives for b.
    assert converted.distinguished == Primitive("S", 2)
    by_label = {}
    for label, t in converted.correspondence:
        by_label.setdefault(label.name, []).append(t)
    assert len(by_label["a"]) == 1 and isinstance(by_label["a"][0], Division)
    assert sorted(repr(t) for t in by_label["b"]) == ["P/2", "S/2"]
    denominator = by_label["a"][0].denominator
    expected = string_graph([dollar(2), Primitive("S", 2), Primitive("P", 2)])
    assert isomorphic(denominator, expected) is not None


def test_wgnf_to_hl_sleeps_production():
    converted = wgnf_to_hl(build_syntree_hrg())
    by_label = {label.name: t for label, t in converted.correspondence}
    sleeps = by_label["sleeps"]
    assert isinstance(sleeps, Division)
    np_prim = Primitive("NP", 1)
    pl, pr = Primitive("p_l", 2), Primitive("p_r", 2)
    expected = build_graph(
        [0, 1, 2],
        [(np_prim, (0,)), (dollar(1), (2,)), (pl, (1, 0)), (pr, (1, 2))],
        (1,),
    )
    assert sleeps.numerator == Primitive("S", 1)
    assert isomorphic(sleeps.denominator, expected) is not None
    assert by_label["l"] == pl and by_label["r"] == pr


def test_wgnf_to_hl_trivial_production_modes(prover):
    s = RankedLabel("S", 1)
    a = RankedLabel("a", 1)
    hrg = HRG(
        nonterminals=(s,),
        terminals=(a,),
        productions=(Production(s, handle(a)),),
        start=s,
    )
    bare = wgnf_to_hl(hrg)
    assert bare.correspondence == ((a, Primitive("S", 1)),)
    kept = wgnf_to_hl(hrg, keep_trivial_divisions=True)
    ((label, t),) = kept.correspondence
    assert isinstance(t, Division)
    assert isomorphic(t.denominator, handle(dollar(1))) is not None
    # Both forms accept the same (only) word of the language.
    for grammar in (bare, kept):
        result = hl_member(grammar, handle(a), prover=prover)
        assert isinstance(result, MemberWitness)


def test_wgnf_to_hl_rejects_non_wgnf():
    s = RankedLabel("S", 2)
    a, b = RankedLabel("a", 2), RankedLabel("b", 2)
    bad = HRG(
        nonterminals=(s,),
        terminals=(a, b),
        productions=(Production(s, string_graph([a, b])),),
        start=s,
    )
    with pytest.raises(ValueError):
        wgnf_to_hl(bad)
