"""Optimal strategy synthesis and exhaustive verification against Player 2.

Every strategy here exposes ``choose(v, acc) -> successor`` where ``acc`` is
the cost accumulated so far. Positional strategies ignore ``acc``; the
Pareto-optimal strategy uses it as its only memory.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional, Protocol

from .fixpoint import SolveResult
from .game import P1, Game
from .profiles import (
    Order,
    Profile,
    add,
    cw_leq,
    fmt_profile,
    is_finite,
    join,
    leq,
    lex_leq,
    sub,
    top,
    zero,
)


class StrategyError(ValueError):
    pass


class Strategy(Protocol):
    def choose(self, v: int, acc: Profile) -> int: ...


@dataclass(frozen=True)
class ParetoStrategy:
    """Finite-memory strategy ensuring the frontier point ``profile`` from ``start``.

    At ``v`` with accumulated cost ``acc`` it looks at the generators of the
    frontier at ``v`` that fit in the remaining budget ``profile - acc``
    (both componentwise and lexicographically), takes the lexicographically
    least one and follows the choice table. With nothing fitting it falls
    back to the first successor.
    """

    result: SolveResult
    start: int
    profile: Profile

    @property
    def game(self) -> Game:
        return self.result.game

    def cover(self, v: int, acc: Profile) -> list[Profile]:
        budget = sub(self.profile, acc)
        return [
            x
            for x in self.result.frontiers[v]
            if is_finite(x) and cw_leq(x, budget) and lex_leq(x, budget)
        ]

    def choose(self, v: int, acc: Profile) -> int:
        cov = self.cover(v, acc)
        if cov:
            return self.result.choices[v][min(cov)].successor
        return self.game.succ[v][0][0]


@dataclass(frozen=True)
class PositionalStrategy:
    """Memoryless strategy. Unmapped vertices fall back to their first successor."""

    game: Game
    mapping: Mapping[int, int]
    unmapped: tuple[int, ...] = ()

    def choose(self, v: int, acc: Profile = ()) -> int:
        u = self.mapping.get(v)
        return self.game.succ[v][0][0] if u is None else u

    def describe(self) -> dict[str, str]:
        return {self.game.name(v): self.game.name(u) for v, u in sorted(self.mapping.items())}


@dataclass(frozen=True)
class TableStrategy:
    """Decisions keyed by (vertex, accumulated profile), as read from an export.

    Entries with ``acc=None`` apply to any accumulated cost at that vertex.
    """

    game: Game
    table: Mapping[tuple[int, Optional[Profile]], int]
    start: Optional[int] = None

    def choose(self, v: int, acc: Profile) -> int:
        u = self.table.get((v, tuple(acc)))
        if u is None:
            u = self.table.get((v, None))
        return self.game.succ[v][0][0] if u is None else u


def synth_pareto(result: SolveResult, u: int | str | None, c: Profile) -> ParetoStrategy:
    if result.order is not Order.COMP:
        raise StrategyError("Pareto strategies need a componentwise result")
    c = tuple(c)
    if not is_finite(c):
        raise StrategyError(f"profile {fmt_profile(c)} is not finite")
    start = result.game.resolve(u)
    if c not in result.frontiers[start]:
        raise StrategyError(f"{fmt_profile(c)} is not on the frontier of {result.game.name(start)}")
    return ParetoStrategy(result, start, c)


def synth_lex_positional(result: SolveResult) -> PositionalStrategy:
    """Follow the choice table entry of the value at every Player 1 vertex."""
    if result.order is not Order.LEX:
        raise StrategyError("positional lexico-optimal strategies need a lexicographic result")
    game = result.game
    mapping: dict[int, int] = {}
    flagged = []
    for v in range(len(game)):
        if game.owner(v) != P1 or game.is_target(v):
            continue
        value = result.frontiers[v][0]
        if not is_finite(value):
            flagged.append(v)
            continue
        mapping[v] = result.choices[v][value].successor
    return PositionalStrategy(game, mapping, tuple(flagged))


@dataclass
class VerificationReport:
    passed: bool
    worst: Profile
    max_steps: int
    outcomes: int
    counterexample: Optional[list[str]] = None
    counterexample_cost: Optional[Profile] = None


@dataclass
class _Node:
    ok: bool
    worst: Profile
    steps: int
    count: int
    bad: Optional[tuple[list[int], Profile]] = field(default=None)


def verify_strategy(
    game: Game,
    strat: Strategy,
    c: Profile,
    depth: Optional[int] = None,
    order: Order = Order.COMP,
    start: int | str | None = None,
) -> VerificationReport:
    """Play ``strat`` against every Player 2 behaviour for ``depth`` steps.

    Passes iff every play reaches a target within ``depth`` steps with cost
    at most ``c`` under ``order``. ``depth`` defaults to ``|V|``.
    """
    depth = len(game) if depth is None else depth
    if start is None:
        start = getattr(strat, "start", None)
    v0 = game.resolve(start)
    c = tuple(c)
    d = game.dim
    worse = join if order is Order.COMP else (lambda a, b: b if lex_leq(a, b) else a)
    memo: dict[tuple[int, Profile, int], _Node] = {}

    def explore(v: int, acc: Profile, remaining: int) -> _Node:
        key = (v, acc, remaining)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if game.is_target(v):
            node = _Node(leq(acc, c, order), acc, 0, 1)
            if not node.ok:
                node.bad = ([v], acc)
        elif remaining == 0:
            node = _Node(False, top(d), 0, 1, ([v], top(d)))
        else:
            if game.owner(v) == P1:
                nxt = [strat.choose(v, acc)]
            else:
                nxt = [u for u, _ in game.succ[v]]
            node = _Node(True, zero(d), 0, 0)
            first = True
            for u in nxt:
                child = explore(u, add(acc, game.weight(v, u)), remaining - 1)
                node.worst = child.worst if first else worse(node.worst, child.worst)
                first = False
                node.steps = max(node.steps, child.steps + 1)
                node.count += child.count
                if not child.ok and node.ok:
                    node.ok = False
                    node.bad = ([v] + child.bad[0], child.bad[1])
        memo[key] = node
        return node

    root = explore(v0, zero(d), depth)
    report = VerificationReport(root.ok, root.worst, root.steps, root.count)
    if root.bad is not None:
        report.counterexample = [game.name(v) for v in root.bad[0]]
        report.counterexample_cost = root.bad[1]
    return report


def enumerate_positional(
    game: Game, v0: int | str | None, order: Order = Order.COMP, cap: int = 10**6
) -> list[tuple[PositionalStrategy, Profile]]:
    """Every positional Player 1 strategy with the profile it ensures from ``v0``.

    The ensured profile is the join (componentwise max, or lexicographic max)
    of the costs of all consistent plays, or all-inf if one of them misses
    the target within ``|V|`` steps.
    """
    start = game.resolve(v0)
    deciders = [v for v in range(len(game)) if game.owner(v) == P1 and not game.is_target(v)]
    count = math.prod(len(game.succ[v]) for v in deciders)
    if count > cap:
        raise StrategyError(f"{count} positional strategies exceed the cap {cap}")
    d = game.dim
    worse = join if order is Order.COMP else (lambda a, b: b if lex_leq(a, b) else a)
    out = []
    for picks in itertools.product(*[[u for u, _ in game.succ[v]] for v in deciders]):
        mapping = dict(zip(deciders, picks))

        @lru_cache(maxsize=None)
        def ensured(v: int, remaining: int) -> Profile:
            if game.is_target(v):
                return zero(d)
            if remaining == 0:
                return top(d)
            if game.owner(v) == P1:
                u = mapping[v]
                return add(game.weight(v, u), ensured(u, remaining - 1))
            acc = None
            for u, w in game.succ[v]:
                x = add(w, ensured(u, remaining - 1))
                acc = x if acc is None else worse(acc, x)
            return acc

        out.append((PositionalStrategy(game, mapping), ensured(start, len(game))))
    return out
