"""Formal contexts and the derivation/closure operators.

A formal context is a binary relation between objects and attributes.
Deriving an object set yields the attributes common to all its objects;
deriving an attribute set yields the objects having all its attributes;
composing the two gives the closure operator that the rest of the
package is tested against.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .sets import AttributeSet, IndexSet, ObjectSet


def _default_names(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(count))


class FormalContext:
    """Immutable object/attribute incidence relation.

    Rows and columns are materialised as bitmasks at construction, so
    both derivation directions are intersections of machine words.
    Duplicate rows are allowed (random models can produce them).
    Objects and attributes are identified by dense indices; `object_names`
    and `attribute_names` are presentation-layer labels only.
    """

    __slots__ = ("n_objects", "n_attributes", "_rows", "_cols",
                 "object_names", "attribute_names")

    def __init__(
        self,
        incidence: Sequence[Sequence[object]],
        object_names: Sequence[str] | None = None,
        attribute_names: Sequence[str] | None = None,
        n_attributes: int | None = None,
    ) -> None:
        n_objects = len(incidence)
        if n_attributes is None:
            if n_objects == 0:
                raise ValueError("n_attributes required for a context with 0 objects")
            n_attributes = len(incidence[0])
        rows = []
        for o, row in enumerate(incidence):
            if len(row) != n_attributes:
                raise ValueError(
                    f"row {o} has {len(row)} cells, expected {n_attributes}"
                )
            mask = 0
            for a, cell in enumerate(row):
                if cell:
                    mask |= 1 << a
            rows.append(mask)
        self._init_from_masks(n_objects, n_attributes, rows,
                              object_names, attribute_names)

    @classmethod
    def from_row_masks(
        cls,
        n_objects: int,
        n_attributes: int,
        row_masks: Iterable[int],
        object_names: Sequence[str] | None = None,
        attribute_names: Sequence[str] | None = None,
    ) -> "FormalContext":
        """Fast constructor from per-object attribute bitmasks."""
        ctx = cls.__new__(cls)
        rows = list(row_masks)
        if len(rows) != n_objects:
            raise ValueError(f"expected {n_objects} row masks, got {len(rows)}")
        for o, mask in enumerate(rows):
            if mask < 0 or mask >> n_attributes:
                raise ValueError(f"row {o} mask has bits outside {n_attributes} attributes")
        ctx._init_from_masks(n_objects, n_attributes, rows,
                             object_names, attribute_names)
        return ctx

    def _init_from_masks(self, n_objects, n_attributes, rows,
                         object_names, attribute_names) -> None:
        cols = [0] * n_attributes
        for o, mask in enumerate(rows):
            obit = 1 << o
            m = mask
            while m:
                low = m & -m
                cols[low.bit_length() - 1] |= obit
                m ^= low
        if object_names is None:
            object_names = _default_names("o", n_objects)
        if attribute_names is None:
            attribute_names = _default_names("a", n_attributes)
        if len(object_names) != n_objects or len(attribute_names) != n_attributes:
            raise ValueError("name sequences must match context dimensions")
        object.__setattr__(self, "n_objects", n_objects)
        object.__setattr__(self, "n_attributes", n_attributes)
        object.__setattr__(self, "_rows", tuple(rows))
        object.__setattr__(self, "_cols", tuple(cols))
        object.__setattr__(self, "object_names", tuple(object_names))
        object.__setattr__(self, "attribute_names", tuple(attribute_names))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FormalContext is immutable")

    # -- views -------------------------------------------------------------

    def incidence(self, o: int, a: int) -> bool:
        return bool(self._rows[o] >> a & 1)

    def object_row(self, o: int) -> AttributeSet:
        """Attributes of object `o` (the row view)."""
        return IndexSet.from_mask(self.n_attributes, self._rows[o])

    def attribute_column(self, a: int) -> ObjectSet:
        """Objects having attribute `a` (the column view)."""
        return IndexSet.from_mask(self.n_objects, self._cols[a])

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._rows

    @property
    def column_masks(self) -> tuple[int, ...]:
        return self._cols

    # -- derivation operators ----------------------------------------------

    def derive_objects(self, objs: ObjectSet) -> AttributeSet:
        """Attributes shared by every object in `objs`.

        The empty object set derives to the full attribute set (empty
        quantification).
        """
        self._check_objects(objs)
        mask = (1 << self.n_attributes) - 1
        for o in objs:
            mask &= self._rows[o]
            if not mask:
                break
        return IndexSet.from_mask(self.n_attributes, mask)

    def derive_attributes(self, attrs: AttributeSet) -> ObjectSet:
        """Objects having every attribute in `attrs`; dual of derive_objects."""
        self._check_attributes(attrs)
        mask = (1 << self.n_objects) - 1
        for a in attrs:
            mask &= self._cols[a]
            if not mask:
                break
        return IndexSet.from_mask(self.n_objects, mask)

    def closure(self, attrs: AttributeSet) -> AttributeSet:
        """Closure of an attribute set: derive twice.

        Extensive, monotone and idempotent.
        """
        return self.derive_objects(self.derive_attributes(attrs))

    def implication_holds(self, premise: AttributeSet, conclusion: AttributeSet) -> bool:
        """True iff premise' is contained in conclusion'."""
        return self.derive_attributes(premise).is_subset(
            self.derive_attributes(conclusion))

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.n_objects == other.n_objects
                and self.n_attributes == other.n_attributes
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.n_objects, self.n_attributes, self._rows))

    def __repr__(self) -> str:
        return f"FormalContext({self.n_objects} objects, {self.n_attributes} attributes)"

    def _check_objects(self, objs: IndexSet) -> None:
        if objs.universe != self.n_objects:
            raise ValueError(
                f"object set universe {objs.universe} != {self.n_objects}")

    def _check_attributes(self, attrs: IndexSet) -> None:
        if attrs.universe != self.n_attributes:
            raise ValueError(
                f"attribute set universe {attrs.universe} != {self.n_attributes}")

    def attribute_set(self, members: Iterable[int] = ()) -> AttributeSet:
        """Convenience constructor bound to this context's attribute universe."""
        return IndexSet(self.n_attributes, members)

    def object_set(self, members: Iterable[int] = ()) -> ObjectSet:
        return IndexSet(self.n_objects, members)
