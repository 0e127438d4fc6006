"""Cost profiles over the extended naturals and the two orders on them.

A cost profile is a plain tuple of length ``d`` whose components are ints or
:data:`INF`. ``INF`` is ``math.inf``: it compares above every int and absorbs
addition, so profile arithmetic needs no special casing.
"""
from __future__ import annotations

import enum
import math
from typing import Iterable, Sequence, Tuple, Union

INF = math.inf

Component = Union[int, float]
Profile = Tuple[Component, ...]


class DimensionError(ValueError):
    """Two profiles (or a profile and a game) disagree on the dimension."""


class Order(enum.Enum):
    LEX = "lex"
    COMP = "comp"

    @classmethod
    def parse(cls, text: str) -> "Order":
        key = text.strip().lower()
        aliases = {
            "lex": cls.LEX,
            "lexicographic": cls.LEX,
            "comp": cls.COMP,
            "componentwise": cls.COMP,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown order {text!r} (expected lex or comp)") from None

    @property
    def is_total(self) -> bool:
        return self is Order.LEX


def zero(d: int) -> Profile:
    return (0,) * d


def top(d: int) -> Profile:
    return (INF,) * d


def is_finite(x: Profile) -> bool:
    return all(c != INF for c in x)


def is_top(x: Profile) -> bool:
    return all(c == INF for c in x)


def _check_dims(a: Profile, b: Profile) -> None:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")


def add(a: Profile, b: Profile) -> Profile:
    _check_dims(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Profile, b: Profile) -> Profile:
    """Componentwise difference; ``b`` must be finite. May go negative."""
    _check_dims(a, b)
    return tuple(x - y for x, y in zip(a, b))


def join(a: Profile, b: Profile) -> Profile:
    """Componentwise maximum (least upper bound under the componentwise order)."""
    _check_dims(a, b)
    return tuple(x if x >= y else y for x, y in zip(a, b))


def lex_cmp(a: Profile, b: Profile) -> int:
    """Three-way lexicographic comparison: -1, 0 or 1."""
    _check_dims(a, b)
    for x, y in zip(a, b):
        if x < y:
            return -1
        if x > y:
            return 1
    return 0


def lex_leq(a: Profile, b: Profile) -> bool:
    return lex_cmp(a, b) <= 0


def cw_leq(a: Profile, b: Profile) -> bool:
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a, b))


def leq(a: Profile, b: Profile, order: Order) -> bool:
    return lex_leq(a, b) if order is Order.LEX else cw_leq(a, b)


def minimal_elements(profiles: Iterable[Profile], order: Order) -> list[Profile]:
    """The minimal elements of ``profiles`` under ``order``, deduplicated and sorted.

    Under the lexicographic order the result has at most one element.
    """
    items = sorted(set(profiles))
    if not items:
        return []
    if order is Order.LEX:
        return [items[0]]
    dims = {len(p) for p in items}
    if len(dims) > 1:
        raise DimensionError(f"profiles of mixed dimensions {sorted(dims)}")
    # anything dominating x is lexicographically <= x, so it was seen earlier
    kept: list[Profile] = []
    for x in items:
        if not _dominated(kept, x):
            kept.append(x)
    return kept


def _dominated(kept: Sequence[Profile], x: Profile) -> bool:
    for g in kept:
        if all(a <= b for a, b in zip(g, x)):
            return True
    return False


def parse_profile(text: str) -> Profile:
    """Parse ``"8,8"`` or ``"inf,3"`` into a profile."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed profile {text!r}")
    out: list[Component] = []
    for p in parts:
        if p.lower() in ("inf", "∞"):
            out.append(INF)
        else:
            n = int(p)
            if n < 0:
                raise ValueError(f"negative component in profile {text!r}")
            out.append(n)
    return tuple(out)


def fmt_component(c: Component) -> str:
    return "inf" if c == INF else str(int(c))


def fmt_profile(x: Profile) -> str:
    return "(" + ",".join(fmt_component(c) for c in x) + ")"


def fmt_antichain(xs: Iterable[Profile]) -> str:
    return "{" + ",".join(fmt_profile(x) for x in xs) + "}"


def to_json_profile(x: Profile) -> list:
    return [c if c != INF else "inf" for c in x]


def from_json_profile(items: Sequence) -> Profile:
    return tuple(INF if c == "inf" else int(c) for c in items)
