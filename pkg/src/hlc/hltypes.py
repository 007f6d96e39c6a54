"""The type language and sequents.

Types are primitives, divisions N ÷ D, and products ×(M).  A division's
denominator D is a hypergraph with exactly one ``$``-labeled edge (the hole)
and all other edges labeled by types; the division's rank is the rank of the
hole.  A product's body M is a hypergraph all of whose edges are labeled by
types; its rank is the rank of the body.

Types are compared (and hashed) up to isomorphism of their component graphs:
two divisions with isomorphic denominators are the same type.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import canon
from .graphs import Hypergraph, is_dollar, validate


class HLType:
    """Base class; concrete types implement ``rank`` and ``canon_key``."""

    def canon_key(self):
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HLType):
            return NotImplemented
        return self.canon_key() == other.canon_key()

    def __hash__(self) -> int:
        return hash(self.canon_key())


class Primitive(HLType):
    """A named primitive type of fixed rank."""

    __slots__ = ("name", "rank", "_key", "_cid")

    def __init__(self, name: str, rank: int):
        self.name = name
        self.rank = rank
        self._key = ("p", name, rank)

    def canon_key(self):
        return self._key

    def __repr__(self) -> str:
        return f"{self.name}/{self.rank}"


class Division(HLType):
    """N ÷ D: graphs that fill D's hole so that the filled graph has type N."""

    def __init__(self, numerator: HLType, denominator: Hypergraph):
        self.numerator = numerator
        self.denominator = denominator
        self._key = None
        self._cc = None

    @property
    def rank(self) -> int:
        return len(self.denominator.att[dollar_edge(self.denominator)])

    def canon_key(self):
        if self._key is None:
            self._key = ("d", self.numerator.canon_key(), canon.canonical_key(self.denominator))
        return self._key

    def __repr__(self) -> str:
        return f"({self.numerator!r} div {self.denominator!r})"


class Product(HLType):
    """×(M): all substitution instances of the type-labeled pattern M."""

    def __init__(self, body: Hypergraph):
        self.body = body
        self._key = None
        self._cc = None

    @property
    def rank(self) -> int:
        return self.body.rank

    def canon_key(self):
        if self._key is None:
            self._key = ("x", canon.canonical_key(self.body))
        return self._key

    def __repr__(self) -> str:
        return f"x({self.body!r})"


def dollar_edge(d: Hypergraph) -> int:
    """The unique ``$``-labeled edge of a denominator."""
    found = [e for e in d.edges if is_dollar(d.lab[e])]
    if len(found) != 1:
        raise ValueError(f"denominator must have exactly one $ edge, found {len(found)}")
    return found[0]


def type_rank(t: HLType) -> int:
    return t.rank


def validate_type(t: object) -> str | None:
    """Check a type tree recursively; None or the first violation."""
    if isinstance(t, Primitive):
        if t.rank < 0:
            return "negative primitive rank"
        return None
    if isinstance(t, Division):
        d = t.denominator
        report = validate(d)
        if report is not None:
            return f"denominator: {report}"
        holes = [e for e in d.edges if is_dollar(d.lab[e])]
        if len(holes) != 1:
            return f"denominator must have exactly one $ edge, found {len(holes)}"
        for e in d.edges:
            if e in holes:
                continue
            lab = d.lab[e]
            if not isinstance(lab, HLType):
                return f"denominator edge {e} not labeled by a type"
            sub = validate_type(lab)
            if sub is not None:
                return sub
        sub = validate_type(t.numerator)
        if sub is not None:
            return sub
        if t.numerator.rank != d.rank:
            return (
                f"numerator/denominator rank mismatch "
                f"({t.numerator.rank} vs {d.rank})"
            )
        return None
    if isinstance(t, Product):
        report = validate(t.body)
        if report is not None:
            return f"product body: {report}"
        for e in t.body.edges:
            lab = t.body.lab[e]
            if not isinstance(lab, HLType):
                return f"product body edge {e} not labeled by a type"
            sub = validate_type(lab)
            if sub is not None:
                return sub
        return None
    return f"not a type: {t!r}"


@dataclass(frozen=True, eq=False)
class Sequent:
    """Antecedent hypergraph labeled by types, plus a succedent type."""

    antecedent: Hypergraph
    succedent: HLType

    def canon_key(self):
        cached = self.__dict__.get("_key")
        if cached is None:
            cached = ("S", canon.canonical_key(self.antecedent), self.succedent.canon_key())
            object.__setattr__(self, "_key", cached)
        return cached

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.canon_key() == other.canon_key()

    def __hash__(self) -> int:
        return hash(self.canon_key())

    def __repr__(self) -> str:
        return f"<Sequent {self.antecedent!r} |- {self.succedent!r}>"


def validate_sequent(s: Sequent) -> str | None:
    """Check rank match, absence of ``$``, and all antecedent label types."""
    report = validate(s.antecedent)
    if report is not None:
        return f"antecedent: {report}"
    sub = validate_type(s.succedent)
    if sub is not None:
        return f"succedent: {sub}"
    for e in s.antecedent.edges:
        lab = s.antecedent.lab[e]
        if is_dollar(lab):
            return f"antecedent edge {e} labeled $"
        if not isinstance(lab, HLType):
            return f"antecedent edge {e} not labeled by a type"
        sub = validate_type(lab)
        if sub is not None:
            return f"antecedent edge {e}: {sub}"
    if s.antecedent.rank != s.succedent.rank:
        return (
            f"rank mismatch: antecedent {s.antecedent.rank}, "
            f"succedent {s.succedent.rank}"
        )
    return None


def connective_count(x: object) -> int:
    """Number of ÷ and × constructors in a type, label, graph, or sequent."""
    if isinstance(x, Sequent):
        cached = x.__dict__.get("_cc")
        if cached is None:
            cached = connective_count(x.antecedent) + connective_count(x.succedent)
            object.__setattr__(x, "_cc", cached)
        return cached
    if isinstance(x, Hypergraph):
        cached = x.__dict__.get("_cc")
        if cached is None:
            cached = sum(connective_count(x.lab[e]) for e in x.edges)
            object.__setattr__(x, "_cc", cached)
        return cached
    if isinstance(x, Primitive):
        return 0
    if isinstance(x, Division):
        if x._cc is None:
            x._cc = 1 + connective_count(x.numerator) + connective_count(x.denominator)
        return x._cc
    if isinstance(x, Product):
        if x._cc is None:
            x._cc = 1 + connective_count(x.body)
        return x._cc
    return 0  # ranked labels and $
