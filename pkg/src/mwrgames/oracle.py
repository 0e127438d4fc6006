"""Brute-force reference answers by backward induction on the unfolded game tree.

Deliberately naive: plain lists, pairwise scans and the comparisons from
:mod:`mwrgames.profiles`. Nothing here touches :mod:`mwrgames.upset` or the
fixpoint solver, so agreement between the two is meaningful.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .game import P1, Game
from .profiles import Order, Profile, add, cw_leq, join, lex_leq, minimal_elements, top, zero

MAX_STATES = 2_000_000


class OracleTooLarge(RuntimeError):
    pass


def _naive_intersection(a: list[Profile], b: list[Profile]) -> list[Profile]:
    out = []
    for x in a:
        for y in b:
            out.append(join(x, y))
    return minimal_elements(out, Order.COMP)


def _solver(game: Game, order: Order):
    d = game.dim

    @lru_cache(maxsize=None)
    def best(v: int, remaining: int) -> tuple[Profile, ...]:
        if game.is_target(v):
            return (zero(d),)
        if remaining == 0:
            return (top(d),)
        children = [[add(x, w) for x in best(u, remaining - 1)] for u, w in game.succ[v]]
        if game.owner(v) == P1:
            flat = [x for ch in children for x in ch]
            return tuple(minimal_elements(flat, order))
        if order is Order.LEX:
            worst = children[0][0]
            for ch in children[1:]:
                if not lex_leq(ch[0], worst):
                    worst = ch[0]
            return (worst,)
        acc = minimal_elements(children[0], Order.COMP)
        for ch in children[1:]:
            acc = _naive_intersection(acc, ch)
        return tuple(acc)

    return best


def _guard(game: Game, depth: int) -> None:
    if len(game) * (depth + 1) > MAX_STATES:
        raise OracleTooLarge(f"{len(game)} vertices at depth {depth} exceeds the oracle's size guard")


def brute_frontier(game: Game, v: int | str | None, order: Order, depth: Optional[int] = None) -> tuple[Profile, ...]:
    """Minimal profiles Player 1 can ensure from ``v`` within ``depth`` steps.

    ``depth`` defaults to ``|V|``, which is enough for the unbounded answer.
    """
    depth = len(game) if depth is None else depth
    _guard(game, depth)
    return _solver(game, order)(game.resolve(v), depth)


def brute_frontiers(game: Game, order: Order, depth: Optional[int] = None) -> list[tuple[Profile, ...]]:
    depth = len(game) if depth is None else depth
    _guard(game, depth)
    best = _solver(game, order)
    return [best(v, depth) for v in range(len(game))]


def brute_ce(game: Game, v0: int | str | None, x: Profile, order: Order = Order.COMP, depth: Optional[int] = None) -> bool:
    """Whether ``x`` lies above some brute-force frontier element under ``order``."""
    leq = cw_leq if order is Order.COMP else lex_leq
    return any(leq(g, x) for g in brute_frontier(game, v0, order, depth))
