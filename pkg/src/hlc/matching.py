"""Enumeration of pattern decompositions and division contexts.

These two enumerators drive backward proof search:

* :func:`enumerate_decompositions` finds every way to present a host graph as
  a substitution instance ``M[m1/H1, ..., ml/Hl]`` of a type-labeled pattern
  ``M`` (the shape of a product-introduction conclusion).

* :func:`enumerate_context_extractions` finds, for a chosen host edge labeled
  by a division N ÷ D, every way to embed D around that edge with D's non-hole
  edges expanded to sub-hypergraphs, and returns the contracted graph in which
  the whole region is collapsed to one fresh N-labeled edge (the shape of a
  division-elimination conclusion, read backward).

Both are exhaustive up to part-isomorphism and free of duplicates; soundness
means reassembling the reported parts reproduces the host up to isomorphism.

Fusion semantics force the search structure: substituting a graph for an edge
fuses only its external nodes with the context, so the interior nodes of each
part are private to it.  Host nodes outside the embedding image therefore tie
the edges incident to them into clusters that must travel together.  By
default parts take the minimal node set (nodes incident to their edges plus
their external nodes); isolated host nodes can be apportioned to parts as
extra interior nodes only behind the ``nonminimal`` flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .canon import canon_id
from .graphs import Hypergraph
from .hltypes import Division, dollar_edge


@dataclass(frozen=True)
class Decomposition:
    """A presentation of the host as a substitution instance of the pattern."""

    node_map: dict[int, int]  # pattern node -> host node (injective)
    parts: dict[int, Hypergraph]  # pattern edge -> sub-hypergraph of the host
    part_edges: dict[int, frozenset[int]]


@dataclass(frozen=True)
class ContextExtraction:
    """A division context around ``pivot``, with the region contracted."""

    pivot: int  # host edge carrying the division type
    phi: dict[int, int]  # denominator node -> host node (injective)
    parts: dict[int, Hypergraph]  # denominator edge (non-$) -> sub-hypergraph
    part_edges: dict[int, frozenset[int]]
    contracted: Hypergraph  # host with the region collapsed to one fresh edge
    numerator_edge: int  # the fresh edge's identifier in ``contracted``


def _subgraph(
    host: Hypergraph,
    edges: frozenset[int],
    ext: tuple[int, ...],
    extra_nodes: frozenset[int] = frozenset(),
) -> Hypergraph:
    nodes = set(ext) | set(extra_nodes)
    for e in edges:
        nodes.update(host.att[e])
    return Hypergraph(
        nodes=tuple(sorted(nodes)),
        edges=tuple(sorted(edges)),
        att={e: host.att[e] for e in edges},
        lab={e: host.lab[e] for e in edges},
        ext=ext,
    )


def _injective_maps(
    host: Hypergraph, fixed: dict[int, int], dom: list[int]
) -> Iterator[dict[int, int]]:
    """All injective extensions of ``fixed`` over ``dom`` into host nodes."""
    if len(set(fixed.values())) != len(fixed):
        return
    remaining = [v for v in dom if v not in fixed]
    used = set(fixed.values())

    def rec(i: int, current: dict[int, int]) -> Iterator[dict[int, int]]:
        if i == len(remaining):
            yield dict(current)
            return
        v = remaining[i]
        for target in host.nodes:
            if target in used:
                continue
            used.add(target)
            current[v] = target
            yield from rec(i + 1, current)
            del current[v]
            used.discard(target)

    yield from rec(0, dict(fixed))


@dataclass
class _Cluster:
    edges: frozenset[int]
    image_hits: frozenset[int]  # incident host nodes inside the embedding image
    interior: frozenset[int]  # incident host nodes outside the image


def _clusters(host: Hypergraph, candidate_edges: list[int], image: set[int]) -> list[_Cluster]:
    """Group candidate edges by shared non-image nodes (union-find)."""
    parent: dict[int, int] = {e: e for e in candidate_edges}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for e in candidate_edges:
        for v in host.att[e]:
            if v in image:
                continue
            if v in owner:
                ra, rb = find(owner[v]), find(e)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[v] = e
    groups: dict[int, list[int]] = {}
    for e in candidate_edges:
        groups.setdefault(find(e), []).append(e)
    out = []
    for members in groups.values():
        hits, interior = set(), set()
        for e in members:
            for v in host.att[e]:
                (hits if v in image else interior).add(v)
        out.append(_Cluster(frozenset(members), frozenset(hits), frozenset(interior)))
    out.sort(key=lambda c: min(c.edges))
    return out


def enumerate_decompositions(
    host: Hypergraph, pattern: Hypergraph, *, nonminimal: bool = False, dedupe: bool = True
) -> Iterator[Decomposition]:
    """All ways to split the host into parts matching the pattern's edges.

    The pattern's external nodes are forced onto the host's (positionally);
    parts jointly cover every host edge and are edge-disjoint; each part's
    external nodes are the images of its pattern edge's attachment nodes.

    ``dedupe=False`` skips the part-isomorphism filter (duplicates may then
    appear); the proof-search engine uses this and deduplicates via its memo.
    """
    if host.rank != pattern.rank:
        return
    fixed = dict(zip(pattern.ext, host.ext))
    pat_edges = sorted(pattern.edges, key=lambda e: -len(pattern.att[e]))
    seen: set = set()
    for phi in _injective_maps(host, fixed, sorted(pattern.nodes)):
        image = set(phi.values())
        lonely = [v for v in host.nodes if v not in image and not host.incidences(v)]
        if lonely and not nonminimal:
            continue  # an uncovered isolated node kills this embedding
        clusters = _clusters(host, sorted(host.edges), image)
        att_sets = {m: {phi[u] for u in pattern.att[m]} for m in pattern.edges}
        slot_lists: list[list[int]] = [
            [m for m in pat_edges if c.image_hits <= att_sets[m]] for c in clusters
        ]
        slot_lists += [list(pat_edges) for _ in lonely]
        if any(not slots for slots in slot_lists):
            continue
        for choice in itertools.product(*slot_lists):
            part_edges: dict[int, set[int]] = {m: set() for m in pattern.edges}
            extra_nodes: dict[int, set[int]] = {m: set() for m in pattern.edges}
            for c, m in zip(clusters, choice):
                part_edges[m].update(c.edges)
            for v, m in zip(lonely, choice[len(clusters):]):
                extra_nodes[m].add(v)
            parts = {
                m: _subgraph(
                    host,
                    frozenset(part_edges[m]),
                    tuple(phi[u] for u in pattern.att[m]),
                    frozenset(extra_nodes[m]),
                )
                for m in pattern.edges
            }
            if dedupe:
                key = tuple(canon_id(parts[m]) for m in sorted(pattern.edges))
                if key in seen:
                    continue
                seen.add(key)
            yield Decomposition(
                node_map=dict(phi),
                parts=parts,
                part_edges={m: frozenset(part_edges[m]) for m in pattern.edges},
            )


def enumerate_context_extractions(
    host: Hypergraph, pivot: int, div_type: Division, *, nonminimal: bool = False, dedupe: bool = True
) -> Iterator[ContextExtraction]:
    """All division contexts at ``pivot``, whose label must equal ``div_type``.

    An extraction embeds the denominator D into the host with its hole on the
    pivot, expands each non-hole edge of D to a sub-hypergraph, and contracts
    the whole region to a single fresh edge labeled by the numerator.  Emitted
    contexts are exactly those whose reassembly reproduces the host.

    ``dedupe=False`` skips the part-isomorphism filter (duplicates may then
    appear); the proof-search engine uses this and deduplicates via its memo.
    """
    d = div_type.denominator
    hole = dollar_edge(d)
    if len(d.att[hole]) != len(host.att[pivot]):
        return
    d_ext = set(d.ext)
    consumed_dom = [v for v in d.nodes if v not in d_ext]
    host_ext = frozenset(host.ext)
    fixed = dict(zip(d.att[hole], host.att[pivot]))
    # Non-external denominator nodes are consumed by the contraction, so they
    # may not land on a host external node.
    if any(v not in d_ext and t in host_ext for v, t in fixed.items()):
        return
    d_edges = sorted(e for e in d.edges if e != hole)
    seen: set = set()
    for phi in _injective_maps(host, fixed, sorted(d.nodes)):
        consumed_img = {phi[v] for v in consumed_dom}
        if consumed_img & host_ext:
            continue
        image = set(phi.values())
        others = [e for e in sorted(host.edges) if e != pivot]
        clusters = _clusters(host, others, image)
        att_sets = {de: {phi[u] for u in d.att[de]} for de in d_edges}
        slot_lists: list[list[int | None]] = []
        feasible = True
        for c in clusters:
            slots: list[int | None] = [
                de
                for de in d_edges
                if c.image_hits <= att_sets[de] and not (c.interior & host_ext)
            ]
            if not (c.image_hits & consumed_img):
                slots.append(None)  # the cluster may stay outside the region
            if not slots:
                feasible = False
                break
            slot_lists.append(slots)
        if not feasible:
            continue
        extra_dom: list[int] = []
        if nonminimal:
            extra_dom = [
                v
                for v in host.nodes
                if v not in image and not host.incidences(v) and v not in host_ext
            ]
            slot_lists += [[*d_edges, None] for _ in extra_dom]
        for choice in itertools.product(*slot_lists):
            part_edges: dict[int, set[int]] = {de: set() for de in d_edges}
            extra_nodes: dict[int, set[int]] = {de: set() for de in d_edges}
            outside: set[int] = set()
            for c, slot in zip(clusters, choice):
                if slot is None:
                    outside.update(c.edges)
                else:
                    part_edges[slot].update(c.edges)
            consumed = set(consumed_img)
            for de in d_edges:
                for e in part_edges[de]:
                    consumed.update(v for v in host.att[e] if v not in image)
            for v, slot in zip(extra_dom, choice[len(clusters):]):
                if slot is not None:
                    extra_nodes[slot].add(v)
                    consumed.add(v)
            parts = {
                de: _subgraph(
                    host,
                    frozenset(part_edges[de]),
                    tuple(phi[u] for u in d.att[de]),
                    frozenset(extra_nodes[de]),
                )
                for de in d_edges
            }
            kept = [v for v in host.nodes if v not in consumed]
            fresh = max(host.edges, default=-1) + 1
            att = {e: host.att[e] for e in outside}
            lab = {e: host.lab[e] for e in outside}
            att[fresh] = tuple(phi[v] for v in d.ext)
            lab[fresh] = div_type.numerator
            contracted = Hypergraph(
                nodes=tuple(sorted(kept)),
                edges=tuple(sorted(att)),
                att=att,
                lab=lab,
                ext=host.ext,
            )
            if dedupe:
                key = (
                    canon_id(contracted),
                    tuple(canon_id(parts[de]) for de in d_edges),
                )
                if key in seen:
                    continue
                seen.add(key)
            yield ContextExtraction(
                pivot=pivot,
                phi=dict(phi),
                parts=parts,
                part_edges={de: frozenset(part_edges[de]) for de in d_edges},
                contracted=contracted,
                numerator_edge=fresh,
            )
