"""Fixed-universe index sets backed by integer bitmasks.

All set algebra in this package (attribute sets, object sets, hypergraph
edges, implication premises) runs on these. Elements are dense integer
indices ``0..universe-1``; the mask representation makes union,
intersection and subset tests single big-int operations.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class IndexSet:
    """Immutable subset of ``{0, ..., universe-1}``.

    Binary operations require both operands to share the same universe
    size; mixing universes raises ``ValueError``.
    """

    __slots__ = ("universe", "mask")

    def __init__(self, universe: int, members: Iterable[int] = ()) -> None:
        if universe < 0:
            raise ValueError(f"universe size must be >= 0, got {universe}")
        mask = 0
        for i in members:
            if not 0 <= i < universe:
                raise ValueError(f"member {i} outside universe of size {universe}")
            mask |= 1 << i
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, universe: int, mask: int) -> "IndexSet":
        """Wrap a raw bitmask. Bits at or above `universe` are invalid."""
        if mask < 0 or mask >> universe:
            raise ValueError(f"mask {mask:#x} has bits outside universe {universe}")
        s = cls.__new__(cls)
        object.__setattr__(s, "universe", universe)
        object.__setattr__(s, "mask", mask)
        return s

    @classmethod
    def full(cls, universe: int) -> "IndexSet":
        return cls.from_mask(universe, (1 << universe) - 1)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IndexSet is immutable")

    # -- queries ---------------------------------------------------------

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.universe and bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def members(self) -> tuple[int, ...]:
        """Ascending member indices; also the canonical sort key."""
        return tuple(self)

    def is_subset(self, other: "IndexSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def is_proper_subset(self, other: "IndexSet") -> bool:
        return self.mask != other.mask and self.is_subset(other)

    def intersects(self, other: "IndexSet") -> bool:
        self._check(other)
        return bool(self.mask & other.mask)

    # -- algebra ---------------------------------------------------------

    def __or__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet.from_mask(self.universe, self.mask | other.mask)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet.from_mask(self.universe, self.mask & other.mask)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet.from_mask(self.universe, self.mask & ~other.mask)

    def complement(self) -> "IndexSet":
        return IndexSet.from_mask(self.universe, ~self.mask & ((1 << self.universe) - 1))

    def add(self, i: int) -> "IndexSet":
        """New set with `i` added (the receiver is unchanged)."""
        if not 0 <= i < self.universe:
            raise ValueError(f"member {i} outside universe of size {self.universe}")
        return IndexSet.from_mask(self.universe, self.mask | 1 << i)

    def remove(self, i: int) -> "IndexSet":
        """New set with `i` removed (no error if absent)."""
        if not 0 <= i < self.universe:
            raise ValueError(f"member {i} outside universe of size {self.universe}")
        return IndexSet.from_mask(self.universe, self.mask & ~(1 << i))

    # -- identity --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.universe == other.universe and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.universe, self.mask))

    def __repr__(self) -> str:
        return f"IndexSet({self.universe}, {{{', '.join(map(str, self))}}})"

    def _check(self, other: "IndexSet") -> None:
        if self.universe != other.universe:
            raise ValueError(
                f"universe mismatch: {self.universe} vs {other.universe}"
            )


# Attribute and object sets share the representation; the distinction is
# which universe (attribute count vs object count) they are built over.
AttributeSet = IndexSet
ObjectSet = IndexSet


def sort_key(s: IndexSet) -> tuple[int, ...]:
    """Lexicographic-by-members order used for all deterministic output."""
    return s.members
