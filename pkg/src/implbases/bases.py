"""Implication bases of a formal context.

Two bases are built here. The base of proper premises (canonical direct
base) comes from per-attribute hypergraph dualization: the proper
premises of attribute `a` are the minimal transversals of the hypergraph
whose edges are the complements of the rows missing `a`, with the
trivial transversal {a} removed. The Duquenne-Guigues (stem) base is
enumerated in lectic order over the sets closed under strict application
of the implications found so far; its premises are exactly the
pseudo-intents.

Both constructions have brute-force oracles used by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .context import FormalContext
from .hypergraph import Hypergraph, _transversal_masks
from .sets import AttributeSet, IndexSet, sort_key

BRUTE_FORCE_PREMISE_LIMIT = 15
BRUTE_FORCE_PSEUDO_INTENT_LIMIT = 12


@dataclass(frozen=True)
class Implication:
    """Premise/conclusion pair over a shared attribute universe.

    Stored in reduced form: the conclusion excludes premise members and
    is nonempty.
    """

    premise: AttributeSet
    conclusion: AttributeSet

    def __post_init__(self) -> None:
        if self.premise.universe != self.conclusion.universe:
            raise ValueError("premise and conclusion universes differ")
        if not self.conclusion:
            raise ValueError("conclusion must be nonempty")
        if self.premise.intersects(self.conclusion):
            raise ValueError("conclusion must exclude premise members")

    def __repr__(self) -> str:
        p = " ".join(map(str, self.premise))
        c = " ".join(map(str, self.conclusion))
        return f"Implication({p or '∅'} -> {c})"


@dataclass(frozen=True)
class ImplicationBase:
    """Ordered implication collection tagged with its construction."""

    implications: tuple[Implication, ...]
    kind: str  # "proper" or "stem"
    n_attributes: int

    def __post_init__(self) -> None:
        if self.kind not in ("proper", "stem"):
            raise ValueError(f"unknown base kind {self.kind!r}")
        seen = set()
        for imp in self.implications:
            if imp.premise.universe != self.n_attributes:
                raise ValueError("implication universe differs from base universe")
            key = (imp.premise.mask, imp.conclusion.mask)
            if key in seen:
                raise ValueError("duplicate implication")
            seen.add(key)

    def __len__(self) -> int:
        return len(self.implications)

    def __iter__(self):
        return iter(self.implications)

    @property
    def premise_count(self) -> int:
        """Distinct premises (= implication count: premises are unique)."""
        return len({imp.premise.mask for imp in self.implications})

    @property
    def pair_count(self) -> int:
        """Premise -> single-attribute pairs, i.e. summed conclusion sizes."""
        return sum(len(imp.conclusion) for imp in self.implications)


# -- proper premises ----------------------------------------------------------


def attribute_hypergraph(ctx: FormalContext, a: int) -> Hypergraph:
    """One edge (attribute complement of the object's row) per object
    missing `a`; edgeless when column `a` is full. Every edge contains
    `a`. Duplicate edges are preserved; dualization normalizes anyway.
    """
    if not 0 <= a < ctx.n_attributes:
        raise ValueError(f"attribute {a} outside universe {ctx.n_attributes}")
    n = ctx.n_attributes
    full = (1 << n) - 1
    masks = [full & ~row for o, row in enumerate(ctx.row_masks)
             if not (row >> a & 1)]
    return Hypergraph.from_masks(n, masks)


def proper_premises_of(ctx: FormalContext, a: int) -> list[AttributeSet]:
    """Minimal transversals of the attribute hypergraph, minus the
    trivial transversal {a}.

    {a} is always a minimal transversal when edges exist (it belongs to
    every edge) and no other minimal transversal contains `a`, so the
    removal is a plain set difference. When column `a` is full the
    result is [{}]: every object has `a`, so `a` follows from nothing.
    """
    h = attribute_hypergraph(ctx, a)
    masks = _transversal_masks(h.vertex_count, h.edge_masks)
    abit = 1 << a
    out = [IndexSet.from_mask(ctx.n_attributes, m) for m in masks if m != abit]
    out.sort(key=sort_key)
    return out


def brute_force_proper_premises(ctx: FormalContext, a: int) -> list[AttributeSet]:
    """Oracle: scan all attribute subsets for the premise property
    (intersecting every row complement that misses `a`), keep the
    inclusion-minimal ones, drop {a}.
    """
    n = ctx.n_attributes
    if n > BRUTE_FORCE_PREMISE_LIMIT:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_PREMISE_LIMIT} attributes, got {n}")
    if not 0 <= a < n:
        raise ValueError(f"attribute {a} outside universe {n}")
    full = (1 << n) - 1
    edges = [full & ~row for row in ctx.row_masks if not (row >> a & 1)]
    premises = [s for s in range(1 << n) if all(s & e for e in edges)]
    premises.sort(key=lambda m: m.bit_count())
    kept: list[int] = []
    for s in premises:
        if not any(k & s == k for k in kept):
            kept.append(s)
    abit = 1 << a
    out = [IndexSet.from_mask(n, m) for m in kept if m != abit]
    out.sort(key=sort_key)
    return out


def proper_premise_base(ctx: FormalContext) -> ImplicationBase:
    """Union over attributes of their proper premises, merged so that
    implications sharing a premise aggregate conclusions.
    """
    n = ctx.n_attributes
    merged: dict[int, int] = {}
    for a in range(n):
        abit = 1 << a
        for p in proper_premises_of(ctx, a):
            merged[p.mask] = merged.get(p.mask, 0) | abit
    implications = [
        Implication(IndexSet.from_mask(n, pmask),
                    IndexSet.from_mask(n, cmask))
        for pmask, cmask in merged.items()
    ]
    implications.sort(key=lambda imp: sort_key(imp.premise))
    return ImplicationBase(tuple(implications), "proper", n)


# -- implication-set closure ---------------------------------------------------


def close_once(base: ImplicationBase | Iterable[Implication],
               x: AttributeSet) -> AttributeSet:
    """Single-pass closure: x plus the conclusions of all implications
    whose premise lies inside x."""
    mask = x.mask
    out = mask
    for imp in base:
        p = imp.premise.mask
        if p & ~mask == 0:
            out |= imp.conclusion.mask
    return IndexSet.from_mask(x.universe, out)


def close_fixpoint(base: ImplicationBase | Iterable[Implication],
                   x: AttributeSet) -> AttributeSet:
    """Least fixpoint of close_once above x.

    Each productive round adds at least one attribute, so at most
    |universe| rounds run.
    """
    imps = [(imp.premise.mask, imp.conclusion.mask) for imp in base]
    mask = x.mask
    changed = True
    while changed:
        changed = False
        for p, c in imps:
            if p & ~mask == 0 and c & ~mask:
                mask |= c
                changed = True
    return IndexSet.from_mask(x.universe, mask)


# -- stem base ------------------------------------------------------------------


def _strict_close(imps: Sequence[tuple[int, int]], mask: int) -> int:
    """Fixpoint of applying P -> P'' only where P is a proper subset."""
    changed = True
    while changed:
        changed = False
        for p, c in imps:
            if p != mask and p & ~mask == 0 and c & ~mask:
                mask |= c
                changed = True
    return mask


def stem_base(ctx: FormalContext) -> ImplicationBase:
    """Duquenne-Guigues base: implications P -> P''\\P over the
    pseudo-intents P, discovered in lectic order.

    Sets closed under strict application of the pseudo-intent
    implications found so far are exactly the intents plus the
    pseudo-intents; the enumeration walks them with Next-Closure and
    keeps the non-closed ones.
    """
    n = ctx.n_attributes
    full = (1 << n) - 1
    found: list[tuple[int, int]] = []  # (pseudo-intent, its closure)
    implications: list[Implication] = []
    current = _strict_close(found, 0)
    while True:
        closed = _closure_mask(ctx, current)
        if closed != current:
            found.append((current, closed))
            implications.append(Implication(
                IndexSet.from_mask(n, current),
                IndexSet.from_mask(n, closed & ~current)))
        if current == full:
            break
        current = _next_strict_closed(found, current, n)
    return ImplicationBase(tuple(implications), "stem", n)


def _next_strict_closed(imps: Sequence[tuple[int, int]], mask: int, n: int) -> int:
    """Lectic successor among strictly-closed sets (Next-Closure step).

    Attribute 0 is the most significant position of the lectic order.
    """
    for i in range(n - 1, -1, -1):
        ibit = 1 << i
        if mask & ibit:
            mask &= ~ibit
        else:
            below = (ibit - 1) & mask
            candidate = _strict_close(imps, below | ibit)
            added = candidate & ~below
            if added & -added == ibit:  # no new element more significant than i
                return candidate
    raise RuntimeError("no lectic successor below the full set")


def _closure_mask(ctx: FormalContext, attrs_mask: int) -> int:
    obj_mask = (1 << ctx.n_objects) - 1
    cols = ctx.column_masks
    m = attrs_mask
    while m:
        low = m & -m
        obj_mask &= cols[low.bit_length() - 1]
        m ^= low
    out = (1 << ctx.n_attributes) - 1
    rows = ctx.row_masks
    while obj_mask:
        low = obj_mask & -obj_mask
        out &= rows[low.bit_length() - 1]
        obj_mask ^= low
    return out


def brute_force_pseudo_intents(ctx: FormalContext) -> list[AttributeSet]:
    """Oracle: apply the recursive pseudo-intent definition to all
    attribute subsets in ascending cardinality.

    P is a pseudo-intent iff P is not closed and Q'' is a proper subset
    of P for every pseudo-intent Q properly inside P.
    """
    n = ctx.n_attributes
    if n > BRUTE_FORCE_PSEUDO_INTENT_LIMIT:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_PSEUDO_INTENT_LIMIT} attributes, got {n}")
    subsets = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    pseudo: list[tuple[int, int]] = []  # (pseudo-intent, closure)
    for s in subsets:
        closed = _closure_mask(ctx, s)
        if closed == s:
            continue
        if all(not (q != s and q & ~s == 0) or (qc != s and qc & ~s == 0)
               for q, qc in pseudo):
            pseudo.append((s, closed))
    out = [IndexSet.from_mask(n, s) for s, _ in pseudo]
    out.sort(key=sort_key)
    return out


# -- text serialization ----------------------------------------------------------


def format_implications(base: ImplicationBase,
                        attribute_names: Sequence[str]) -> str:
    """Stable text form: one implication per line, members sorted by
    attribute index, lines sorted by (premise, conclusion) index tuples.
    An empty premise renders as a line starting with '->'.
    """
    lines = []
    for imp in sorted(base,
                      key=lambda i: (sort_key(i.premise), sort_key(i.conclusion))):
        premise = " ".join(attribute_names[a] for a in imp.premise)
        conclusion = " ".join(attribute_names[a] for a in imp.conclusion)
        lines.append(f"{premise} -> {conclusion}" if premise else f"-> {conclusion}")
    return "\n".join(lines) + ("\n" if lines else "")
