from __future__ import annotations

import random

import pytest

from hlc.calculus import DerivationTree, check_derivation
from hlc.fixtures import (
    all_binary_graphs,
    build_hgr1,
    build_hgr2,
    build_sgr,
    hgr1_types,
    hgr2_types,
    hgr1_witness,
    in_l1,
    is_bipartite,
    is_regular,
    random_l1_graph,
    sgr_member_strings,
    STAR,
)
from hlc.graphs import RankedLabel, build_graph, relabel
from hlc.hltypes import Sequent, type_rank, validate_type
from hlc.suites import kite_graph


def test_sgr_member_strings():
    assert sgr_member_strings(7) == ["b", "abb", "aabbb", "aaabbbb"]


def test_all_fixture_types_validate():
    for types in (hgr1_types(), hgr2_types()):
        for t in types.values():
            assert validate_type(t) is None
    for g in (build_sgr(), build_hgr1(), build_hgr2()):
        for _, t in g.correspondence:
            assert validate_type(t) is None


def test_fixture_type_ranks():
    t1 = hgr1_types()
    assert type_rank(t1["Q1"]) == 1 and type_rank(t1["Q2"]) == 1 and type_rank(t1["Q3"]) == 1
    assert type_rank(t1["M11_11"]) == 2 and type_rank(t1["M22"]) == 2
    assert type_rank(t1["s"]) == 0
    t2 = hgr2_types()
    for i in (1, 2, 3, 4):
        assert type_rank(t2[f"R{i}p"]) == 1
    assert type_rank(t2["S"]) == 0
    assert type_rank(t2["M_11"]) == 2


def test_witness_replays_worked_example(prover):
    # Four nodes 0..3, edges 0->1, 0->2, 1->2, 3->2; anchors: nodes 0 and 1
    # elect the first edge, node 2 elects the second, node 3 elects the last;
    # begin node 3, end node 0.
    g = kite_graph()
    anchor = {0: 0, 1: 0, 2: 1, 3: 3}
    assignment = hgr1_witness(g, v_begin=3, v_end=0, anchor=anchor)
    t = hgr1_types()
    assert assignment[0] == t["M11_32"]
    assert assignment[1] == t["M21_2"]
    assert assignment[2] == t["M22"]
    assert assignment[3] == t["M12_1"]
    result = prover.derive(Sequent(relabel(g, assignment), t["s"]))
    assert isinstance(result, DerivationTree)


def test_witness_single_edge(prover):
    g = build_graph([0, 1], [(STAR, (0, 1))], ())
    assignment = hgr1_witness(g, v_begin=0, v_end=1, anchor={0: 0, 1: 0})
    t = hgr1_types()
    assert assignment[0] == t["M11_13"]
    result = prover.derive(Sequent(relabel(g, assignment), t["s"]))
    assert isinstance(result, DerivationTree)
    assert check_derivation(result) is None


def test_witness_triangle(prover):
    g = build_graph([0, 1, 2], [(STAR, (0, 1)), (STAR, (1, 2)), (STAR, (2, 0))], ())
    assignment = hgr1_witness(g)
    t = hgr1_types()
    result = prover.derive(Sequent(relabel(g, assignment), t["s"]))
    assert isinstance(result, DerivationTree)


def test_witness_rejects_bad_input():
    lonely = build_graph([0, 1, 2], [(STAR, (0, 1))], ())
    with pytest.raises(ValueError):
        hgr1_witness(lonely)
    edge = build_graph([0, 1], [(STAR, (0, 1))], ())
    with pytest.raises(ValueError):
        hgr1_witness(edge, v_begin=0, v_end=0)
    with pytest.raises(ValueError):
        hgr1_witness(edge, anchor={0: 5, 1: 0})


def test_bipartite_oracle():
    cycle3 = build_graph([0, 1, 2], [(STAR, (0, 1)), (STAR, (1, 2)), (STAR, (2, 0))], ())
    assert not is_bipartite(cycle3)
    edge = build_graph([0, 1], [(STAR, (0, 1))], ())
    assert is_bipartite(edge)
    cycle2 = build_graph([0, 1], [(STAR, (0, 1)), (STAR, (1, 0))], ())
    assert not is_bipartite(cycle2)
    path2 = build_graph([0, 1, 2], [(STAR, (0, 1)), (STAR, (1, 2))], ())
    assert not is_bipartite(path2)
    star_in = build_graph([0, 1, 2], [(STAR, (0, 1)), (STAR, (2, 1))], ())
    assert is_bipartite(star_in)
    with pytest.raises(ValueError):
        is_bipartite(build_graph([0], [(RankedLabel("u", 1), (0,))], ()))


def test_regular_oracle():
    edge = build_graph([0, 1], [(STAR, (0, 1))], ())
    assert not is_regular(edge)
    cycle2 = build_graph([0, 1], [(STAR, (0, 1)), (STAR, (1, 0))], ())
    assert is_regular(cycle2)
    cycle3 = build_graph([0, 1, 2], [(STAR, (0, 1)), (STAR, (1, 2)), (STAR, (2, 0))], ())
    assert is_regular(cycle3)
    lopsided = build_graph([0, 1], [(STAR, (0, 1)), (STAR, (0, 1))], ())
    assert not is_regular(lopsided)


def test_l1_oracle():
    edge = build_graph([0, 1], [(STAR, (0, 1))], ())
    assert in_l1(edge)
    assert not in_l1(build_graph([0, 1, 2], [(STAR, (0, 1))], ()))  # isolated node
    assert not in_l1(build_graph([0, 1], [(STAR, (0, 1))], (0,)))  # external node
    assert not in_l1(build_graph([], [], ()))  # empty graph
    assert not in_l1(build_graph([0], [(RankedLabel("u", 1), (0,))], ()))  # unary edge


def test_all_binary_graphs_census():
    graphs = all_binary_graphs((1,))
    assert len(graphs) == 1
    for g in all_binary_graphs((1, 2, 3)):
        assert in_l1(g)
    two = all_binary_graphs((2,))
    # Parallel, antiparallel, head-to-head, tail-to-tail, chain, disjoint.
    assert len(two) == 6


def test_random_l1_graphs_are_in_l1():
    rng = random.Random(0)
    for _ in range(30):
        assert in_l1(random_l1_graph(rng, max_edges=5))


def test_flowerbed_structure_roundtrip():
    from hlc.fixtures import flowerbed_structure
    from hlc.graphs import flowerbed

    a1 = RankedLabel("a", 1)
    z3 = RankedLabel("z", 3)
    b = RankedLabel("b", 2)
    rng = random.Random(1)
    for _ in range(30):
        multisets = [
            [rng.choice([a1, z3]) for _ in range(rng.randint(0, 2))]
            for _ in range(rng.randint(1, 4))
        ]
        g = flowerbed(multisets, b)
        recovered = flowerbed_structure(g, b)
        assert recovered is not None
        got, spine = recovered
        assert spine == b
        assert [sorted(ms, key=repr) for ms in got] == [
            sorted(ms, key=repr) for ms in multisets
        ]


def test_flowerbed_structure_rejects_non_flowerbeds():
    from hlc.fixtures import flowerbed_structure

    b = RankedLabel("b", 2)
    a1 = RankedLabel("a", 1)
    # Branching spine.
    branch = build_graph([0, 1, 2], [(b, (0, 1)), (b, (0, 2))], ())
    assert flowerbed_structure(branch, b) is None
    # External nodes are not allowed.
    ext = build_graph([0, 1], [(b, (0, 1))], (0,))
    assert flowerbed_structure(ext, b) is None
    # A flower anchored on a private node of another flower.
    z2 = RankedLabel("z", 2)
    bad = build_graph([0, 1], [(z2, (0, 1)), (a1, (1,))], ())
    assert flowerbed_structure(bad, b) is None


def test_flowerbed_balanced_oracles():
    from hlc.fixtures import in_flowerbed_balanced
    from hlc.graphs import flowerbed

    a1 = RankedLabel("a", 1)
    z3 = RankedLabel("z", 3)
    b = RankedLabel("b", 2)
    balanced = flowerbed([[a1, z3], [a1, z3], [a1, z3]], b)
    assert in_flowerbed_balanced(balanced, b, offset=0)
    assert in_flowerbed_balanced(balanced, b, offset=1)
    lopsided = flowerbed([[a1, a1], [a1, z3]], b)
    assert not in_flowerbed_balanced(lopsided, b, offset=0)
    # Offsets shift which pairs are constrained.
    skewed = flowerbed([[a1], [a1, z3], [a1, z3]], b)
    assert not in_flowerbed_balanced(skewed, b, offset=0)
    assert in_flowerbed_balanced(skewed, b, offset=1)
    not_fb = build_graph([0, 1], [(b, (0, 1)), (b, (1, 0))], ())
    assert not in_flowerbed_balanced(not_fb, b, offset=0)
