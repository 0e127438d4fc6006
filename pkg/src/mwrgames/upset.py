"""Upward-closed subsets of (N u {inf})^d kept as antichains of minimal generators.

All operations here are for the componentwise order. An :class:`UpSet` is
never empty: "nothing ensured yet" is the set generated by the all-inf
profile alone.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .profiles import DimensionError, Profile, fmt_antichain, top, zero


def minimize(profiles: Iterable[Profile]) -> tuple[Profile, ...]:
    """Componentwise-minimal, deduplicated profiles in lexicographic order.

    Quadratic domination scan. A profile can only be dominated by one that
    sorts before it, so a single pass over the sorted list suffices.
    """
    kept: list[Profile] = []
    for x in sorted(set(profiles)):
        if not any(all(a <= b for a, b in zip(g, x)) for g in kept):
            kept.append(x)
    return tuple(kept)


class UpSet:
    """The upward closure of a nonempty antichain of generators."""

    __slots__ = ("generators", "dim")

    def __init__(self, profiles: Iterable[Profile]):
        items = list(profiles)
        if not items:
            raise ValueError("an UpSet needs at least one generator")
        dims = {len(g) for g in items}
        if len(dims) != 1:
            raise DimensionError(f"generators of mixed dimension {sorted(dims)}")
        gens = minimize(items)
        self.generators = gens
        self.dim = len(gens[0])

    @classmethod
    def _canonical(cls, gens: tuple[Profile, ...]) -> "UpSet":
        # caller guarantees gens is already minimized and sorted
        obj = cls.__new__(cls)
        obj.generators = gens
        obj.dim = len(gens[0])
        return obj

    @classmethod
    def nothing(cls, d: int) -> "UpSet":
        """The set ``{inf-profile}``."""
        return cls._canonical((top(d),))

    @classmethod
    def everything(cls, d: int) -> "UpSet":
        return cls._canonical((zero(d),))

    def _check(self, other: "UpSet") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def union(self, other: "UpSet") -> "UpSet":
        self._check(other)
        return UpSet._canonical(minimize(self.generators + other.generators))

    def intersect(self, other: "UpSet") -> "UpSet":
        self._check(other)
        pairs = [
            tuple(a if a >= b else b for a, b in zip(x, y))
            for x in self.generators
            for y in other.generators
        ]
        return UpSet._canonical(minimize(pairs))

    def translate(self, w: Profile) -> "UpSet":
        if len(w) != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {len(w)}")
        # translation preserves both the antichain property and the sort order
        return UpSet._canonical(tuple(tuple(a + b for a, b in zip(g, w)) for g in self.generators))

    def contains(self, x: Profile) -> bool:
        if len(x) != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {len(x)}")
        return any(all(a <= b for a, b in zip(g, x)) for g in self.generators)

    __contains__ = contains

    def issubset(self, other: "UpSet") -> bool:
        """``up(self) <= up(other)``: every generator of self lies in other."""
        return all(other.contains(g) for g in self.generators)

    def __iter__(self) -> Iterator[Profile]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UpSet):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"UpSet({fmt_antichain(self.generators)})"


def union_all(sets: Sequence[UpSet]) -> UpSet:
    gens: list[Profile] = []
    for s in sets:
        gens.extend(s.generators)
    return UpSet(gens)


def intersect_all(sets: Sequence[UpSet]) -> UpSet:
    """Left fold of :meth:`UpSet.intersect`, minimizing after every step."""
    if not sets:
        raise ValueError("intersection of no sets")
    acc = sets[0]
    for s in sets[1:]:
        acc = acc.intersect(s)
    return acc
