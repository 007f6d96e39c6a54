"""Grammars over hypergraphs.

An HL-grammar pairs a ranked alphabet with a distinguished type and a finite
label-to-type relation; a graph belongs to its language iff some relabeling of
its edges by corresponding types yields a derivable sequent against the
distinguished type.

A hyperedge replacement grammar (HRG) rewrites nonterminal edges by production
right-hand sides, starting from the start symbol's handle.  Generation here is
bounded and exhaustive, which gives an honest desk-scale membership oracle.
A production may mark some terminals as *fixed* technical labels: they do not
count as the designated terminal of a weak-Greibach-normal-form production and
translate to dedicated primitive types under conversion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .calculus import (
    BudgetExceeded,
    DerivationTree,
    Prover,
    SearchBudget,
    SearchStats,
)
from .canon import canonical_key
from .graphs import Hypergraph, RankedLabel, dollar, handle, relabel, replace, validate
from .hltypes import Division, HLType, Primitive, Sequent, validate_type


@dataclass(frozen=True)
class HLGrammar:
    alphabet: tuple[RankedLabel, ...]
    distinguished: HLType
    correspondence: tuple[tuple[RankedLabel, HLType], ...]

    def types_for(self, label: RankedLabel) -> tuple[HLType, ...]:
        return tuple(t for a, t in self.correspondence if a == label)


def validate_hl_grammar(g: HLGrammar) -> str | None:
    for a, t in g.correspondence:
        if a not in g.alphabet:
            return f"correspondence label {a!r} not in the alphabet"
        report = validate_type(t)
        if report is not None:
            return f"type for {a!r}: {report}"
        if a.rank != t.rank:
            return f"rank mismatch in correspondence for {a!r}"
    return validate_type(g.distinguished)


def type_set(g: HLGrammar) -> list[HLType]:
    """The range of the correspondence, without duplicates."""
    out: list[HLType] = []
    seen = set()
    for _, t in g.correspondence:
        key = t.canon_key()
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


@dataclass(frozen=True)
class Production:
    lhs: RankedLabel
    rhs: Hypergraph


@dataclass(frozen=True)
class HRG:
    nonterminals: tuple[RankedLabel, ...]
    terminals: tuple[RankedLabel, ...]
    productions: tuple[Production, ...]
    start: RankedLabel
    fixed: frozenset[RankedLabel] = frozenset()  # technical terminals (e.g. tree-order markers)


def validate_hrg(g: HRG) -> str | None:
    if set(g.nonterminals) & set(g.terminals):
        return "nonterminals and terminals must be disjoint"
    if g.start not in g.nonterminals:
        return "start symbol must be a nonterminal"
    if not g.fixed <= set(g.terminals):
        return "fixed labels must be terminals"
    known = set(g.nonterminals) | set(g.terminals)
    for i, prod in enumerate(g.productions):
        if prod.lhs not in g.nonterminals:
            return f"production {i}: left-hand side not a nonterminal"
        if prod.rhs.rank != prod.lhs.rank:
            return f"production {i}: rank mismatch"
        report = validate(prod.rhs)
        if report is not None:
            return f"production {i}: {report}"
        for e in prod.rhs.edges:
            if prod.rhs.lab[e] not in known:
                return f"production {i}: unknown label {prod.rhs.lab[e]!r}"
    return None


@dataclass(frozen=True)
class MemberWitness:
    assignment: dict[int, HLType]  # edge -> chosen type
    relabeled: Sequent
    tree: DerivationTree


@dataclass(frozen=True)
class NotMember:
    stats: SearchStats


def hl_member(
    g: HLGrammar,
    graph: Hypergraph,
    budget: SearchBudget | None = None,
    *,
    prover: Prover | None = None,
    seed: int = 0,
) -> MemberWitness | NotMember | BudgetExceeded:
    """Decide membership of ``graph`` in the grammar's language.

    Tries every relabeling of the edges by corresponding types; memoized
    derivability makes isomorphic relabelings cheap.  Candidate order is
    seeded-shuffled so that accepted graphs are usually found long before the
    assignment space is exhausted; a NotMember answer always means the space
    was exhausted without a budget event.
    """
    report = validate(graph)
    if report is not None:
        raise ValueError(f"invalid graph: {report}")
    alphabet = set(g.alphabet)
    for e in graph.edges:
        if graph.lab[e] not in alphabet:
            raise ValueError(f"edge {e} labeled outside the grammar alphabet: {graph.lab[e]!r}")
    prover = prover or Prover()
    rng = random.Random(seed)
    edges = sorted(graph.edges, key=lambda e: len(g.types_for(graph.lab[e])))
    candidates: list[list[HLType]] = []
    for e in edges:
        options = list(g.types_for(graph.lab[e]))
        rng.shuffle(options)
        candidates.append(options)

    def assignments():
        def rec(i: int, acc: dict[int, HLType]):
            if i == len(edges):
                yield dict(acc)
                return
            for t in candidates[i]:
                acc[edges[i]] = t
                yield from rec(i + 1, acc)

        yield from rec(0, {})

    total_nodes = 0
    any_budget = False
    for assignment in assignments():
        seq = Sequent(relabel(graph, assignment), g.distinguished)
        result = prover.derive(seq, budget)
        if isinstance(result, DerivationTree):
            return MemberWitness(assignment=assignment, relabeled=seq, tree=result)
        total_nodes += result.stats.nodes_expanded
        if isinstance(result, BudgetExceeded):
            any_budget = True
    stats = SearchStats(total_nodes, int(any_budget), len(prover.memo))
    if any_budget:
        return BudgetExceeded(stats)
    return NotMember(stats)


def hrg_generate(g: HRG, max_edges: int, max_steps: int) -> list[Hypergraph]:
    """All terminal graphs reachable within the step bound while every
    intermediate graph stays within the edge bound; canonical duplicates
    removed.  Breadth-first over canonical states, so any derivation order
    that respects the bounds is covered."""
    if max_edges <= 0 or max_steps <= 0:
        raise ValueError("bounds must be positive")
    nonterminals = set(g.nonterminals)
    start = handle(g.start)
    frontier = {canonical_key(start): start}
    seen = set(frontier)
    results: dict[object, Hypergraph] = {}
    for _ in range(max_steps):
        if not frontier:
            break
        next_frontier: dict[object, Hypergraph] = {}
        for graph in frontier.values():
            nt_edges = [e for e in sorted(graph.edges) if graph.lab[e] in nonterminals]
            if not nt_edges:
                results.setdefault(canonical_key(graph), graph)
                continue
            for e in nt_edges:
                for prod in g.productions:
                    if prod.lhs != graph.lab[e]:
                        continue
                    successor = replace(graph, e, prod.rhs)
                    if len(successor.edges) > max_edges:
                        continue
                    key = canonical_key(successor)
                    if key not in seen:
                        seen.add(key)
                        next_frontier[key] = successor
        frontier = next_frontier
    for graph in frontier.values():
        if not any(graph.lab[e] in nonterminals for e in graph.edges):
            results.setdefault(canonical_key(graph), graph)
    out = list(results.values())
    out.sort(key=canonical_key)
    return out


def _membership_bounds(g: HRG, n_edges: int) -> tuple[int, int]:
    # A WGNF derivation of an n-edge graph applies exactly n productions and
    # never holds more than n edges; otherwise fall back to generous bounds,
    # padding the edge bound when erasing productions can overshoot.
    max_rhs = max((len(p.rhs.edges) for p in g.productions), default=0)
    if is_wgnf(g):
        return n_edges, max(n_edges, 1)
    steps = max(1, n_edges * (1 + max_rhs))
    erasing = any(not p.rhs.edges for p in g.productions)
    edge_bound = n_edges + (steps if erasing else 0)
    return max(edge_bound, 1), steps


def hrg_member(g: HRG, graph: Hypergraph) -> bool:
    """Bounded-exhaustive membership: generate everything of the right size."""
    terminals = set(g.terminals)
    for e in graph.edges:
        if graph.lab[e] not in terminals:
            return False
    max_edges, max_steps = _membership_bounds(g, len(graph.edges))
    key = canonical_key(graph)
    return any(canonical_key(h) == key for h in hrg_generate(g, max_edges, max_steps))


def designated_terminal_edges(g: HRG, rhs: Hypergraph) -> list[int]:
    """Edges of a right-hand side labeled by non-fixed terminals."""
    terminals = set(g.terminals) - g.fixed
    return [e for e in sorted(rhs.edges) if rhs.lab[e] in terminals]


def is_wgnf(g: HRG) -> bool:
    """Every production carries exactly one designated terminal edge."""
    return all(len(designated_terminal_edges(g, p.rhs)) == 1 for p in g.productions)


def _nonterminal_primitive(x: RankedLabel) -> Primitive:
    return Primitive(x.name, x.rank)


def _fixed_primitive(x: RankedLabel) -> Primitive:
    return Primitive(f"p_{x.name}", x.rank)


def wgnf_to_hl(g: HRG, *, keep_trivial_divisions: bool = False) -> HLGrammar:
    """Convert a weak-Greibach-normal-form HRG into an equivalent HL-grammar.

    Each production contributes one correspondence: the designated terminal
    edge becomes the denominator hole, every nonterminal edge is relabeled by
    a primitive standing for that nonterminal, and every fixed terminal by its
    dedicated primitive.  A production whose right-hand side is just the
    terminal's handle collapses to a bare primitive correspondence unless
    ``keep_trivial_divisions`` is set (the two forms are interderivable).
    """
    if not is_wgnf(g):
        raise ValueError("grammar is not in weak Greibach normal form")
    nonterminals = set(g.nonterminals)
    correspondence: list[tuple[RankedLabel, HLType]] = []
    seen = set()
    for prod in g.productions:
        terminal_edge = designated_terminal_edges(g, prod.rhs)[0]
        a = prod.rhs.lab[terminal_edge]
        lhs_type = _nonterminal_primitive(prod.lhs)
        relabeling: dict[int, object] = {}
        for e in prod.rhs.edges:
            lab = prod.rhs.lab[e]
            if e == terminal_edge:
                relabeling[e] = dollar(a.rank)
            elif lab in nonterminals:
                relabeling[e] = _nonterminal_primitive(lab)
            elif lab in g.fixed:
                relabeling[e] = _fixed_primitive(lab)
            else:  # unreachable in WGNF: a second designated terminal
                raise ValueError("production has more than one designated terminal")
        denominator = relabel(prod.rhs, relabeling)
        trivial = (
            len(denominator.edges) == 1
            and canonical_key(denominator) == canonical_key(handle(dollar(a.rank)))
        )
        t: HLType
        if trivial and not keep_trivial_divisions:
            t = lhs_type
        else:
            t = Division(lhs_type, denominator)
        key = (a, t.canon_key())
        if key not in seen:
            seen.add(key)
            correspondence.append((a, t))
    for x in sorted(g.fixed, key=lambda l: (l.name, l.rank)):
        correspondence.append((x, _fixed_primitive(x)))
    alphabet = tuple(sorted(set(g.terminals), key=lambda l: (l.name, l.rank)))
    return HLGrammar(
        alphabet=alphabet,
        distinguished=_nonterminal_primitive(g.start),
        correspondence=tuple(correspondence),
    )
