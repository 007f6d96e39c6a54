"""Canonical forms and isomorphism for hypergraphs.

Two graphs are isomorphic iff their canonical forms are byte-equal.  The
canonical form is computed by iterative partition refinement on node colors
(signatures built from edge labels, attachment positions, and external-node
positions) followed by backtracking individualization; the minimum encoding
over all discrete refinements is canonical.  Only the *result* is contractual;
the refinement heuristic is not.

Edge labels contribute via their ``canon_key()`` method, so graphs labeled by
types are canonicalized up to type equality.  Internally labels are numbered
within each graph by the sorted order of their keys, which keeps the search
on small integers without making the exported encoding depend on session
history: the canonical tuple carries the sorted label table itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Hypergraph


# Interning label keys lets the search run on small integers; the sorted
# label tables are cached per key multiset since grammars reuse a handful of
# types across millions of candidate graphs.
_KEY_IDS: dict[object, int] = {}
_KEYS_BY_ID: list[object] = []
_TABLE_CACHE: dict[tuple[int, ...], tuple[tuple, dict[int, int]]] = {}


def _intern(key: object) -> int:
    kid = _KEY_IDS.get(key)
    if kid is None:
        kid = len(_KEYS_BY_ID)
        _KEY_IDS[key] = kid
        _KEYS_BY_ID.append(key)
    return kid


def _label_id(label: object) -> int:
    """Interned id of a label's canon key, cached on the label object."""
    kid = getattr(label, "_cid", None)
    if kid is None:
        kid = _intern(label.canon_key())
        try:
            object.__setattr__(label, "_cid", kid)
        except (AttributeError, TypeError):
            pass
        return kid
    return kid


def _label_table(kids: list[int]) -> tuple[tuple, dict[int, int]]:
    cache_key = tuple(sorted(set(kids)))
    cached = _TABLE_CACHE.get(cache_key)
    if cached is None:
        table = tuple(sorted(_KEYS_BY_ID[kid] for kid in cache_key))
        local = {_KEY_IDS[key]: i for i, key in enumerate(table)}
        cached = (table, local)
        _TABLE_CACHE[cache_key] = cached
    return cached


class _Prep:
    """Integer-indexed view of a graph, shared by the whole canon search."""

    __slots__ = ("nodes", "edges", "label_table", "elab", "eatt", "inc", "ext", "n")

    def __init__(self, g: Hypergraph):
        self.nodes = g.nodes  # normalized sorted by construction
        self.edges = g.edges
        nidx = {v: i for i, v in enumerate(self.nodes)}
        kids = [_label_id(g.lab[e]) for e in self.edges]
        self.label_table, local = _label_table(kids)
        self.elab = [local[kid] for kid in kids]
        self.eatt = [tuple(nidx[v] for v in g.att[e]) for e in self.edges]
        self.n = len(self.nodes)
        inc: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for ei, att in enumerate(self.eatt):
            for pos, vi in enumerate(att):
                inc[vi].append((self.elab[ei], pos, ei))
        for lst in inc:
            lst.sort()
        self.inc = inc
        self.ext = tuple(nidx[v] for v in g.ext)


def _refine(prep: _Prep, colors: list[int]) -> list[int]:
    """1-dimensional refinement; color ranks come from sorted signature
    values, never from identifiers, so the partition is renaming-invariant."""
    eatt = prep.eatt
    inc = prep.inc
    n = prep.n
    distinct = len(set(colors))
    while True:
        sigs = []
        for vi in range(n):
            local = [
                (lab, pos, tuple(colors[u] for u in eatt[ei])) for lab, pos, ei in inc[vi]
            ]
            local.sort()
            sigs.append((colors[vi], tuple(local)))
        ranked = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if len(ranked) == n or len(ranked) == distinct:
            return new  # discrete, or no cell split: stable
        distinct = len(ranked)
        colors = new


def _encode(prep: _Prep, colors: list[int]):
    edge_keys = sorted(
        ((prep.elab[ei], tuple(colors[v] for v in prep.eatt[ei])), ei)
        for ei in range(len(prep.edges))
    )
    enc = (
        len(prep.nodes),
        tuple(colors[v] for v in prep.ext),
        tuple(k for k, _ in edge_keys),
    )
    edge_order = [0] * len(prep.edges)
    for rank, (_, ei) in enumerate(edge_keys):
        edge_order[ei] = rank
    return enc, edge_order


def _search(prep: _Prep, colors: list[int]):
    colors = _refine(prep, colors)
    cells: dict[int, list[int]] = {}
    for vi, c in enumerate(colors):
        cells.setdefault(c, []).append(vi)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        enc, edge_order = _encode(prep, colors)
        return enc, colors, edge_order
    # Nodes in an all-isolated cell are interchangeable: one branch suffices.
    branch = [target[0]] if all(not prep.inc[vi] for vi in target) else target
    fresh = prep.n
    best = None
    for vi in branch:
        trial = list(colors)
        trial[vi] = fresh
        cand = _search(prep, trial)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def canon_data(g: Hypergraph):
    """(canonical tuple, node order, edge order); cached on the graph value."""
    cached = g.__dict__.get("_canon")
    if cached is None:
        prep = _Prep(g)
        init = [0] * prep.n
        for pos, vi in enumerate(prep.ext):
            init[vi] = pos + 1
        enc, colors, edge_order = _search(prep, init)
        key = ("H", *enc, prep.label_table)
        node_order = {v: colors[i] for i, v in enumerate(prep.nodes)}
        edge_map = {e: edge_order[i] for i, e in enumerate(prep.edges)}
        cached = (key, node_order, edge_map)
        object.__setattr__(g, "_canon", cached)
    return cached


def canonical_key(g: Hypergraph):
    """Hashable canonical encoding; equal iff isomorphic."""
    return canon_data(g)[0]


def canon_id(g: Hypergraph) -> int:
    """Interned canonical key: equal ints iff isomorphic (process-local)."""
    cid = g.__dict__.get("_canon_id")
    if cid is None:
        cid = _intern(canonical_key(g))
        object.__setattr__(g, "_canon_id", cid)
    return cid


def canonical_form(g: Hypergraph) -> bytes:
    """Canonical byte encoding; byte-equal iff isomorphic."""
    return repr(canonical_key(g)).encode("utf-8")


def canonical_ordering(g: Hypergraph) -> tuple[dict[int, int], dict[int, int]]:
    """Maps from node/edge identifiers to canonical positions."""
    _, node_order, edge_order = canon_data(g)
    return node_order, edge_order


@dataclass(frozen=True)
class IsoWitness:
    node_map: dict[int, int]
    edge_map: dict[int, int]


def witness_valid(g: Hypergraph, h: Hypergraph, w: IsoWitness) -> bool:
    """Check a claimed isomorphism against its defining equations."""
    if sorted(w.node_map) != sorted(g.nodes) or sorted(w.node_map.values()) != sorted(h.nodes):
        return False
    if sorted(w.edge_map) != sorted(g.edges) or sorted(w.edge_map.values()) != sorted(h.edges):
        return False
    for e in g.edges:
        other = w.edge_map[e]
        if tuple(w.node_map[v] for v in g.att[e]) != h.att[other]:
            return False
        if g.lab[e].canon_key() != h.lab[other].canon_key():
            return False
    return tuple(w.node_map[v] for v in g.ext) == h.ext


def isomorphic(g: Hypergraph, h: Hypergraph) -> IsoWitness | None:
    """An isomorphism witness, or None.  Derived from canonical orderings."""
    if canonical_key(g) != canonical_key(h):
        return None
    g_nodes, g_edges = canonical_ordering(g)
    h_nodes, h_edges = canonical_ordering(h)
    inv_nodes = {i: v for v, i in h_nodes.items()}
    inv_edges = {i: e for e, i in h_edges.items()}
    w = IsoWitness(
        node_map={v: inv_nodes[i] for v, i in g_nodes.items()},
        edge_map={e: inv_edges[i] for e, i in g_edges.items()},
    )
    if not witness_valid(g, h, w):  # pragma: no cover - canonical orderings agree
        raise AssertionError("canonical orderings produced an invalid witness")
    return w


def transport_edge(g_from: Hypergraph, e: int, g_to: Hypergraph) -> int:
    """Map an edge through the canonical isomorphism between two equal-form graphs."""
    _, from_edges = canonical_ordering(g_from)
    _, to_edges = canonical_ordering(g_to)
    inv = {i: d for d, i in to_edges.items()}
    return inv[from_edges[e]]
