"""Backward proof search for hypergraph sequents.

The calculus has one axiom (``p-handle |- p`` for primitive ``p``) and four
rules: division elimination and introduction, product elimination and
introduction.  Product elimination and division introduction are reversible,
so search first *normalizes* a sequent by applying them eagerly (expanding
antecedent product labels and rewriting division succedents); on a normal
sequent only the axiom, division elimination, and product introduction can
conclude, and both rules are enumerated exhaustively via :mod:`hlc.matching`.

Every backward step removes exactly one connective, so the search space is
finite; a failure answer is exact unless a budget was hit along the way.
Results are memoized on canonical sequent encodings and shared across calls
on the same :class:`Prover`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import _label_id, canon_id, canonical_key, transport_edge
from .graphs import handle, relabel_one, replace, replace_all, replace_with_maps
from .hltypes import (
    Division,
    HLType,
    Primitive,
    Product,
    Sequent,
    connective_count,
    dollar_edge,
    validate_sequent,
)
from .matching import enumerate_context_extractions, enumerate_decompositions

AXIOM = "axiom"
DIV_LEFT = "div_left"
DIV_RIGHT = "div_right"
TIMES_LEFT = "times_left"
TIMES_RIGHT = "times_right"

DEFAULT_MAX_NODES = 1_000_000


@dataclass(frozen=True)
class DivLeftData:
    pivot_edge: int  # conclusion antecedent edge carrying the division type
    numerator_edge: int  # the numerator-labeled edge in premises[0]'s antecedent
    part_order: tuple[int, ...]  # denominator edges aligned with premises[1:]


@dataclass(frozen=True)
class TimesLeftData:
    edge: int  # conclusion antecedent edge carrying the product type


@dataclass(frozen=True)
class TimesRightData:
    part_order: tuple[int, ...]  # pattern edges aligned with premises


@dataclass(frozen=True)
class DerivationTree:
    """A rule-instance tree; re-checkable independently of the prover."""

    conclusion: Sequent
    rule: str
    premises: tuple["DerivationTree", ...] = ()
    rule_data: object = None

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def count_rule(self, rule: str) -> int:
        return int(self.rule == rule) + sum(p.count_rule(rule) for p in self.premises)

    def walk(self):
        yield self
        for p in self.premises:
            yield from p.walk()


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_depth: int | None = None  # None: derived from the sequent

    def __post_init__(self):
        if self.max_nodes <= 0 or (self.max_depth is not None and self.max_depth <= 0):
            raise ValueError("budget components must be positive")


def default_depth(s: Sequent) -> int:
    return connective_count(s) + len(s.antecedent.edges) + 2


@dataclass(frozen=True)
class SearchStats:
    nodes_expanded: int
    budget_hits: int
    memo_size: int


@dataclass(frozen=True)
class NotDerivable:
    stats: SearchStats


@dataclass(frozen=True)
class BudgetExceeded:
    stats: SearchStats


def normalize_trace(s: Sequent) -> tuple[Sequent, list[tuple[str, int | None, Sequent]]]:
    """Apply the reversible rules eagerly; return the normal form and the
    applied steps (for rebuilding the corresponding derivation segment)."""
    steps: list[tuple[str, int | None, Sequent]] = []
    current = s
    while True:
        g = current.antecedent
        prod_edge = next((e for e in sorted(g.edges) if isinstance(g.lab[e], Product)), None)
        if prod_edge is not None:
            steps.append((TIMES_LEFT, prod_edge, current))
            current = Sequent(replace(g, prod_edge, g.lab[prod_edge].body), current.succedent)
            continue
        if isinstance(current.succedent, Division):
            div = current.succedent
            steps.append((DIV_RIGHT, None, current))
            d = div.denominator
            current = Sequent(replace(d, dollar_edge(d), g), div.numerator)
            continue
        return current, steps


def normalize(s: Sequent) -> Sequent:
    """Expand antecedent products and rewrite division succedents to a fixpoint.

    Derivability is preserved in both directions.
    """
    return normalize_trace(s)[0]


def _wrap_trace(tree: DerivationTree, steps) -> DerivationTree:
    for kind, edge, conclusion in reversed(steps):
        if kind == TIMES_LEFT:
            tree = DerivationTree(conclusion, TIMES_LEFT, (tree,), TimesLeftData(edge))
        else:
            tree = DerivationTree(conclusion, DIV_RIGHT, (tree,))
    return tree


class Prover:
    """Backward proof search with a memo table shared across calls.

    The memo is keyed by canonical encodings of normalized sequents and is
    append-only; failure is recorded only when the subtree search was
    exhaustive (no budget event occurred inside it).
    """

    def __init__(self, *, nonminimal: bool = False):
        self.nonminimal = nonminimal
        self.memo: dict[object, DerivationTree | bool] = {}
        self.nodes_expanded = 0
        self._budget_hits = 0
        self._node_cap = 0
        self._handle_keys: dict[object, object] = {}

    def derive(
        self, s: Sequent, budget: SearchBudget | None = None
    ) -> DerivationTree | NotDerivable | BudgetExceeded:
        report = validate_sequent(s)
        if report is not None:
            raise ValueError(f"invalid sequent: {report}")
        budget = budget or SearchBudget()
        max_depth = budget.max_depth if budget.max_depth is not None else default_depth(s)
        start_nodes, start_hits = self.nodes_expanded, self._budget_hits
        self._node_cap = self.nodes_expanded + budget.max_nodes
        tree = self._prove(s, 0, max_depth)
        stats = SearchStats(
            nodes_expanded=self.nodes_expanded - start_nodes,
            budget_hits=self._budget_hits - start_hits,
            memo_size=len(self.memo),
        )
        if tree is not None:
            return tree
        if self._budget_hits > start_hits:
            return BudgetExceeded(stats)
        return NotDerivable(stats)

    def _prove(self, s: Sequent, depth: int, max_depth: int) -> DerivationTree | None:
        nseq, steps = normalize_trace(s)
        quick = self._primitive_answer(nseq)
        if quick is not None:
            return _wrap_trace(quick, steps) if quick else None
        key = (canon_id(nseq.antecedent), _label_id(nseq.succedent))
        cached = self.memo.get(key)
        if cached is not None:
            if cached is False:
                return None
            return _wrap_trace(cached, steps)
        if depth > max_depth or self.nodes_expanded >= self._node_cap:
            self._budget_hits += 1
            return None
        self.nodes_expanded += 1
        hits_before = self._budget_hits
        tree = self._expand(nseq, depth, max_depth)
        if tree is not None:
            self.memo[key] = tree
            return _wrap_trace(tree, steps)
        if self._budget_hits == hits_before:
            self.memo[key] = False
        return None

    def _primitive_answer(self, nseq: Sequent) -> DerivationTree | None | bool:
        """Decide all-primitive sequents outright: without connectives only
        the axiom can conclude, so derivability is a handle-shape check.
        Returns None when not applicable."""
        succ = nseq.succedent
        if not isinstance(succ, Primitive):
            return None
        g = nseq.antecedent
        for e in g.edges:
            if not isinstance(g.lab[e], Primitive):
                return None
        if (
            len(g.edges) == 1
            and g.att[g.edges[0]] == g.ext
            and len(g.nodes) == len(g.ext)
            and g.lab[g.edges[0]].canon_key() == succ.canon_key()
        ):
            return DerivationTree(nseq, AXIOM)
        return False

    def _handle_key(self, t: HLType):
        tk = _label_id(t)
        if tk not in self._handle_keys:
            self._handle_keys[tk] = canon_id(handle(t))
        return self._handle_keys[tk]

    def _expand(self, nseq: Sequent, depth: int, max_depth: int) -> DerivationTree | None:
        g, succ = nseq.antecedent, nseq.succedent
        if isinstance(succ, Primitive) and canon_id(g) == self._handle_key(succ):
            return DerivationTree(nseq, AXIOM)
        cc = connective_count(nseq)
        # Division pivots, fewest extractions first.
        pivots = []
        for e in sorted(g.edges):
            lab = g.lab[e]
            if isinstance(lab, Division):
                extractions = list(
                    enumerate_context_extractions(
                        g, e, lab, nonminimal=self.nonminimal, dedupe=False
                    )
                )
                pivots.append((len(extractions), e, lab, extractions))
        pivots.sort(key=lambda t: (t[0], t[1]))
        for _, _, lab, extractions in pivots:
            d = lab.denominator
            hole = dollar_edge(d)
            d_edges = sorted(e for e in d.edges if e != hole)
            for extr in extractions:
                premise_seqs = [Sequent(extr.contracted, succ)] + [
                    Sequent(extr.parts[de], d.lab[de]) for de in d_edges
                ]
                assert sum(connective_count(p) for p in premise_seqs) < cc
                subtrees = self._prove_all(premise_seqs, depth, max_depth)
                if subtrees is None:
                    continue
                main = subtrees[0]
                actual = main.conclusion.antecedent
                num_edge = (
                    extr.numerator_edge
                    if actual is extr.contracted
                    else transport_edge(extr.contracted, extr.numerator_edge, actual)
                )
                data = DivLeftData(
                    pivot_edge=extr.pivot,
                    numerator_edge=num_edge,
                    part_order=tuple(d_edges),
                )
                return DerivationTree(nseq, DIV_LEFT, tuple(subtrees), data)
        if isinstance(succ, Product):
            body = succ.body
            m_edges = sorted(body.edges)
            for dec in enumerate_decompositions(
                g, body, nonminimal=self.nonminimal, dedupe=False
            ):
                premise_seqs = [Sequent(dec.parts[m], body.lab[m]) for m in m_edges]
                assert sum(connective_count(p) for p in premise_seqs) < cc
                subtrees = self._prove_all(premise_seqs, depth, max_depth)
                if subtrees is None:
                    continue
                return DerivationTree(
                    nseq, TIMES_RIGHT, tuple(subtrees), TimesRightData(tuple(m_edges))
                )
        return None

    def _prove_all(self, premise_seqs, depth, max_depth):
        # Cheapest goals first to fail fast; trees reassembled in rule order.
        order = sorted(range(len(premise_seqs)), key=lambda i: connective_count(premise_seqs[i]))
        found: dict[int, DerivationTree] = {}
        for i in order:
            sub = self._prove(premise_seqs[i], depth + 1, max_depth)
            if sub is None:
                return None
            found[i] = sub
        return [found[i] for i in range(len(premise_seqs))]


def derive(
    s: Sequent, budget: SearchBudget | None = None, *, prover: Prover | None = None
) -> DerivationTree | NotDerivable | BudgetExceeded:
    """Search for a derivation of ``s``; see :class:`Prover`."""
    return (prover or Prover()).derive(s, budget)


def _types_equal(a: HLType, b: HLType) -> bool:
    return a.canon_key() == b.canon_key()


def check_derivation(t: DerivationTree) -> str | None:
    """Re-verify a derivation tree against the rule schemata, by reassembly.

    Returns None if every node is a correct instance of its cited rule with
    the recorded rule data, otherwise a description of the first violation.
    """
    report = validate_sequent(t.conclusion)
    if report is not None:
        return f"invalid conclusion: {report}"
    g, succ = t.conclusion.antecedent, t.conclusion.succedent
    try:
        if t.rule == AXIOM:
            if t.premises:
                return "axiom with premises"
            if not isinstance(succ, Primitive):
                return "axiom with non-primitive succedent"
            if canonical_key(g) != canonical_key(handle(succ)):
                return "axiom antecedent is not the succedent's handle"
        elif t.rule == TIMES_LEFT:
            data = t.rule_data
            if len(t.premises) != 1:
                return "product elimination needs one premise"
            lab = g.lab.get(data.edge)
            if not isinstance(lab, Product):
                return "product elimination edge not labeled by a product"
            premise = t.premises[0]
            if not _types_equal(premise.conclusion.succedent, succ):
                return "product elimination premise succedent mismatch"
            expected = replace(g, data.edge, lab.body)
            if canonical_key(premise.conclusion.antecedent) != canonical_key(expected):
                return "product elimination premise antecedent mismatch"
        elif t.rule == DIV_RIGHT:
            if len(t.premises) != 1:
                return "division introduction needs one premise"
            if not isinstance(succ, Division):
                return "division introduction with non-division succedent"
            premise = t.premises[0]
            if not _types_equal(premise.conclusion.succedent, succ.numerator):
                return "division introduction premise succedent mismatch"
            d = succ.denominator
            expected = replace(d, dollar_edge(d), g)
            if canonical_key(premise.conclusion.antecedent) != canonical_key(expected):
                return "division introduction premise antecedent mismatch"
        elif t.rule == DIV_LEFT:
            data = t.rule_data
            lab = g.lab.get(data.pivot_edge)
            if not isinstance(lab, Division):
                return "division elimination pivot not labeled by a division"
            d = lab.denominator
            hole = dollar_edge(d)
            d_edges = sorted(e for e in d.edges if e != hole)
            if sorted(data.part_order) != d_edges:
                return "division elimination part order does not match the denominator"
            if len(t.premises) != 1 + len(d_edges):
                return "division elimination premise count mismatch"
            main = t.premises[0]
            if not _types_equal(main.conclusion.succedent, succ):
                return "division elimination main premise succedent mismatch"
            h = main.conclusion.antecedent
            if data.numerator_edge not in h.lab:
                return "division elimination numerator edge missing"
            if not _types_equal(h.lab[data.numerator_edge], lab.numerator):
                return "division elimination numerator edge label mismatch"
            for de, premise in zip(data.part_order, t.premises[1:]):
                if not _types_equal(premise.conclusion.succedent, d.lab[de]):
                    return "division elimination part premise succedent mismatch"
            composite, _, emap = replace_with_maps(h, data.numerator_edge, d)
            composite = relabel_one(composite, emap[hole], lab)
            composite = replace_all(
                composite,
                {
                    emap[de]: premise.conclusion.antecedent
                    for de, premise in zip(data.part_order, t.premises[1:])
                },
            )
            if canonical_key(composite) != canonical_key(g):
                return "division elimination reassembly does not match the conclusion"
        elif t.rule == TIMES_RIGHT:
            data = t.rule_data
            if not isinstance(succ, Product):
                return "product introduction with non-product succedent"
            body = succ.body
            if sorted(data.part_order) != sorted(body.edges):
                return "product introduction part order does not match the pattern"
            if len(t.premises) != len(body.edges):
                return "product introduction premise count mismatch"
            for m, premise in zip(data.part_order, t.premises):
                if not _types_equal(premise.conclusion.succedent, body.lab[m]):
                    return "product introduction premise succedent mismatch"
            composite = replace_all(
                body,
                {m: premise.conclusion.antecedent for m, premise in zip(data.part_order, t.premises)},
            )
            if canonical_key(composite) != canonical_key(g):
                return "product introduction reassembly does not match the conclusion"
        else:
            return f"unknown rule {t.rule!r}"
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        return f"rule data does not fit: {exc}"
    for premise in t.premises:
        report = check_derivation(premise)
        if report is not None:
            return report
    return None


def cut_compose(
    d1: DerivationTree,
    d2: DerivationTree,
    e0: int,
    *,
    prover: Prover | None = None,
    budget: SearchBudget | None = None,
) -> DerivationTree | BudgetExceeded:
    """Substitute the first derivation's sequent into an edge of the second.

    With ``d1`` deriving H -> A and ``d2`` deriving G -> B where edge ``e0`` of
    G is labeled A, returns a checking derivation of G[e0/H] -> B, found by a
    fresh search (cut is admissible, so only a budget can stop it; an outright
    search failure would be a prover bug and raises).
    """
    for name, tree in (("first", d1), ("second", d2)):
        report = check_derivation(tree)
        if report is not None:
            raise ValueError(f"{name} derivation does not check: {report}")
    a = d1.conclusion.succedent
    g = d2.conclusion.antecedent
    if e0 not in g.lab:
        raise KeyError(f"cut edge {e0} not in the second antecedent")
    if not _types_equal(g.lab[e0], a):
        raise ValueError("cut edge label must equal the first succedent")
    composed = Sequent(replace(g, e0, d1.conclusion.antecedent), d2.conclusion.succedent)
    if budget is None:
        budget = SearchBudget(max_nodes=max(DEFAULT_MAX_NODES, 10_000 * (d1.size() + d2.size())))
    result = (prover or Prover()).derive(composed, budget)
    if isinstance(result, (DerivationTree, BudgetExceeded)):
        return result
    raise RuntimeError("cut composite did not re-derive; this indicates a prover bug")
