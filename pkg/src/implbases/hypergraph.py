"""Hypergraphs over an attribute universe and minimal-transversal enumeration.

The enumerator is Berge multiplication: edges are folded one at a time
(ascending cardinality) while maintaining the antichain of minimal
transversals of the prefix. Inner loops work on raw bitmasks.

Degenerate inputs are distinguished deliberately: a hypergraph with no
edges has the single (vacuous) minimal transversal ``{}``, while a
hypergraph containing an empty edge has none at all.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .sets import IndexSet, sort_key

BRUTE_FORCE_VERTEX_LIMIT = 20


class Hypergraph:
    """Finite edge family over vertices ``0..vertex_count-1``."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count: int, edges: Iterable[IndexSet]) -> None:
        edges = tuple(edges)
        for e in edges:
            if e.universe != vertex_count:
                raise ValueError(
                    f"edge universe {e.universe} != vertex count {vertex_count}")
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_masks(cls, vertex_count: int, masks: Iterable[int]) -> "Hypergraph":
        return cls(vertex_count,
                   (IndexSet.from_mask(vertex_count, m) for m in masks))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Hypergraph is immutable")

    @property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(e.mask for e in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph({self.vertex_count}, {len(self.edges)} edges)"


def normalize(h: Hypergraph) -> Hypergraph:
    """Deduplicated, inclusion-minimal edge family.

    The transversal hypergraph depends only on the minimal edges, so
    this is transversal-preserving. Output edge order is lexicographic.
    """
    kept = _minimize_masks(h.edge_masks)
    kept_sets = sorted(
        (IndexSet.from_mask(h.vertex_count, m) for m in kept), key=sort_key)
    return Hypergraph(h.vertex_count, kept_sets)


def is_transversal(h: Hypergraph, s: IndexSet) -> bool:
    """True iff `s` intersects every edge (vacuously true when edgeless)."""
    if s.universe != h.vertex_count:
        raise ValueError(f"vertex universe {s.universe} != {h.vertex_count}")
    mask = s.mask
    return all(mask & e for e in h.edge_masks) if h.edges else True


def minimal_transversals(h: Hypergraph) -> list[IndexSet]:
    """All inclusion-minimal transversals, lexicographic by member indices.

    Returns ``[{}]`` for an edgeless hypergraph and ``[]`` when some edge
    is empty (nothing can intersect it).
    """
    masks = _transversal_masks(h.vertex_count, h.edge_masks)
    out = [IndexSet.from_mask(h.vertex_count, m) for m in masks]
    out.sort(key=sort_key)
    return out


def brute_force_transversals(h: Hypergraph) -> list[IndexSet]:
    """Oracle: scan all vertex subsets, keep the minimal transversals.

    Same contract as :func:`minimal_transversals`; guarded to small
    vertex counts.
    """
    n = h.vertex_count
    if n > BRUTE_FORCE_VERTEX_LIMIT:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_VERTEX_LIMIT} vertices, got {n}")
    edges = h.edge_masks
    transversals = [s for s in range(1 << n)
                    if all(s & e for e in edges)]
    transversals.sort(key=lambda m: m.bit_count())
    kept: list[int] = []
    for s in transversals:
        if not any(k & s == k for k in kept):
            kept.append(s)
    out = [IndexSet.from_mask(n, m) for m in kept]
    out.sort(key=sort_key)
    return out


# -- mask-level core ---------------------------------------------------------

def _members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _minimize_masks(masks: Sequence[int]) -> list[int]:
    """Deduplicated inclusion-minimal subfamily."""
    ordered = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _transversal_masks(n: int, edge_masks: Sequence[int]) -> list[int]:
    """Berge multiplication over bitmasks.

    Folding edge E into antichain T splits T into the part already
    hitting E (kept unchanged) and the misses. Every candidate is
    ``t | {v}`` for a miss t and v in E. Because misses are disjoint
    from E, candidates can neither contain one another nor equal a kept
    set, so the only minimality check needed is against kept sets whose
    intersection with E is exactly {v} (any other kept subset of
    ``t | {v}`` would already be a subset of t, impossible in an
    antichain).
    """
    edges = _minimize_masks(edge_masks)
    if any(e == 0 for e in edges):
        return []
    # ascending cardinality keeps intermediate antichains small; ties
    # lexicographic by member indices for reproducible folds
    edges.sort(key=lambda e: (e.bit_count(), _members(e)))
    trans = [0]
    for e in edges:
        hit = []
        miss = []
        for t in trans:
            if t & e:
                hit.append(t)
            else:
                miss.append(t)
        if not miss:
            continue
        vertices = []
        rest = e
        while rest:
            low = rest & -rest
            vertices.append(low.bit_length() - 1)
            rest ^= low
        # kept sets blocking candidates for vertex v, with v stripped
        blockers: dict[int, list[int]] = {v: [] for v in vertices}
        for hmask in hit:
            he = hmask & e
            if he & (he - 1) == 0:  # exactly one vertex of e
                blockers[he.bit_length() - 1].append(hmask & ~he)
        new = list(hit)
        for v in vertices:
            gv = sorted(blockers[v], key=lambda m: m.bit_count())
            vbit = 1 << v
            for t in miss:
                for g in gv:
                    if g & t == g:
                        break
                else:
                    new.append(t | vbit)
        trans = new
    return trans
