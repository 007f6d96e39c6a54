"""Finite language models: valuations, denotations, and truth of sequents.

A valuation assigns a finite set of graphs over a fixed ranked alphabet to
each primitive type.  It extends to products by substitution and to divisions
by quantifying over the denominator labels' denotations; a sequent holds when
the denotation of its antecedent's product is included in the succedent's.

Exact checking is possible precisely when every universal quantifier ranges
over an enumerable denotation, i.e. when the types in denominator positions
contain no division.  Outside that fragment the answer is ``UNDECIDED``,
which is a first-class result and never conflated with falsehood.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .canon import canonical_key
from .graphs import Hypergraph, RankedLabel, build_graph, replace_all, validate
from .hltypes import Division, HLType, Primitive, Product, Sequent, dollar_edge
from .matching import enumerate_decompositions


class _Sentinel:
    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __bool__(self) -> bool:
        raise TypeError(f"{self._name} is not a truth value")


UNDECIDED = _Sentinel("UNDECIDED")
NOT_ENUMERABLE = _Sentinel("NOT_ENUMERABLE")


@dataclass(frozen=True)
class Valuation:
    alphabet: tuple[RankedLabel, ...]
    assignment: tuple[tuple[Primitive, tuple[Hypergraph, ...]], ...]

    def graphs(self, p: Primitive) -> tuple[Hypergraph, ...]:
        for prim, graphs in self.assignment:
            if prim == p:
                return graphs
        return ()


def validate_valuation(w: Valuation) -> str | None:
    for p, graphs in w.assignment:
        for g in w.graphs(p):
            report = validate(g)
            if report is not None:
                return f"{p!r}: {report}"
            if g.rank != p.rank:
                return f"{p!r}: rank mismatch (graph rank {g.rank})"
            for e in g.edges:
                if g.lab[e] not in w.alphabet:
                    return f"{p!r}: label {g.lab[e]!r} outside the alphabet"
    return None


def is_enumerable(t: HLType) -> bool:
    """Division-free types have finitely enumerable denotations."""
    if isinstance(t, Primitive):
        return True
    if isinstance(t, Product):
        return all(is_enumerable(t.body.lab[e]) for e in t.body.edges)
    return False


def contains_decidable(t: HLType) -> bool:
    """Membership is exactly decidable when every denominator-position type
    is enumerable."""
    if isinstance(t, Primitive):
        return True
    if isinstance(t, Product):
        return all(contains_decidable(t.body.lab[e]) for e in t.body.edges)
    if isinstance(t, Division):
        d = t.denominator
        hole = dollar_edge(d)
        return all(
            is_enumerable(d.lab[e]) for e in d.edges if e != hole
        ) and contains_decidable(t.numerator)
    return False


def _dedupe(graphs) -> list[Hypergraph]:
    out: dict[object, Hypergraph] = {}
    for g in graphs:
        out.setdefault(canonical_key(g), g)
    return sorted(out.values(), key=canonical_key)


def denotation_enumerate(w: Valuation, t: HLType):
    """The exact denotation of an enumerable type, as canonical representatives;
    ``NOT_ENUMERABLE`` for types containing a division."""
    if not is_enumerable(t):
        return NOT_ENUMERABLE
    if isinstance(t, Primitive):
        return _dedupe(w.graphs(t))
    body = t.body
    edges = sorted(body.edges)
    pools = [denotation_enumerate(w, body.lab[e]) for e in edges]
    out = []
    for pick in itertools.product(*pools):
        out.append(replace_all(body, dict(zip(edges, pick))))
    return _dedupe(out)


def denotation_contains(w: Valuation, t: HLType, g: Hypergraph):
    """Exact membership of ``g`` in the denotation of ``t``, or UNDECIDED."""
    if not contains_decidable(t):
        return UNDECIDED
    return _contains(w, t, g)


def _contains(w: Valuation, t: HLType, g: Hypergraph) -> bool:
    if g.rank != t.rank:
        return False
    if isinstance(t, Primitive):
        key = canonical_key(g)
        return any(canonical_key(h) == key for h in w.graphs(t))
    if isinstance(t, Product):
        body = t.body
        # Nonminimal decompositions are required for exactness: denotation
        # members may carry isolated interior nodes.
        for dec in enumerate_decompositions(g, body, nonminimal=True):
            if all(_contains(w, body.lab[m], dec.parts[m]) for m in body.edges):
                return True
        return False
    assert isinstance(t, Division)
    d = t.denominator
    hole = dollar_edge(d)
    others = sorted(e for e in d.edges if e != hole)
    pools = [denotation_enumerate(w, d.lab[e]) for e in others]
    for pick in itertools.product(*pools):
        filled = replace_all(d, {hole: g, **dict(zip(others, pick))})
        if not _contains(w, t.numerator, filled):
            return False
    return True


def sequent_holds(w: Valuation, s: Sequent):
    """Truth of a sequent: every instance of the antecedent's product belongs
    to the succedent's denotation.  UNDECIDED outside the exact fragment."""
    lhs = denotation_enumerate(w, Product(s.antecedent))
    if lhs is NOT_ENUMERABLE or not contains_decidable(s.succedent):
        return UNDECIDED
    return all(_contains(w, s.succedent, g) for g in lhs)


def random_graphs(
    rng: random.Random,
    rank: int,
    alphabet: tuple[RankedLabel, ...],
    *,
    count: int,
    max_edges: int = 2,
) -> list[Hypergraph]:
    """Small random graphs of the given rank over the alphabet, valid by
    construction (attachments and external nodes drawn without repetition)."""
    floor = max(rank, 1, max((l.rank for l in alphabet), default=1))
    out = []
    for _ in range(count):
        k = rng.randint(0, max_edges)
        nodes = list(range(rng.randint(floor, floor + 2)))
        edges = []
        for _ in range(k):
            lab = rng.choice(alphabet)
            edges.append((lab, tuple(rng.sample(nodes, lab.rank))))
        ext = tuple(rng.sample(nodes, rank))
        out.append(build_graph(nodes, edges, ext))
    return out


def random_valuation(
    rng: random.Random,
    primitives: list[Primitive],
    alphabet: tuple[RankedLabel, ...] = (RankedLabel("u", 2), RankedLabel("w", 1)),
    *,
    max_graphs: int = 2,
    max_edges: int = 2,
) -> Valuation:
    """A seeded random finite valuation covering the given primitives."""
    assignment = []
    for p in primitives:
        count = rng.randint(0, max_graphs)
        graphs = tuple(random_graphs(rng, p.rank, alphabet, count=count, max_edges=max_edges))
        assignment.append((p, graphs))
    return Valuation(alphabet=alphabet, assignment=tuple(assignment))


def sequent_primitives(s: Sequent) -> list[Primitive]:
    """All primitive types occurring anywhere in a sequent, deduplicated."""
    seen: dict[object, Primitive] = {}

    def visit_type(t: HLType) -> None:
        if isinstance(t, Primitive):
            seen.setdefault(t.canon_key(), t)
        elif isinstance(t, Division):
            visit_type(t.numerator)
            visit_graph(t.denominator)
        elif isinstance(t, Product):
            visit_graph(t.body)

    def visit_graph(g: Hypergraph) -> None:
        for e in g.edges:
            lab = g.lab[e]
            if isinstance(lab, HLType):
                visit_type(lab)

    visit_graph(s.antecedent)
    visit_type(s.succedent)
    return [seen[k] for k in sorted(seen)]
