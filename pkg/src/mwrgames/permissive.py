"""Multi-strategies in 1-weighted games with edge penalties.

A multi-strategy lets Player 1 allow a nonempty *set* of successors; every
edge it blocks costs its penalty. The extended game turns each such set
choice into an explicit vertex so that (cost, penalty) trade-offs can be
solved as an ordinary 2-weighted reachability game:

* ``cp`` mode weighs edges as ``(cost, penalty)``,
* ``pc`` mode as ``(penalty, cost)``.
"""
from __future__ import annotations

import bisect
import logging
import os
import warnings
from dataclasses import dataclass
from typing import Mapping, Optional, Protocol, Sequence

from .constrained import ce_comp
from .fixpoint import SolveResult, solve
from .game import P1, P2, Edge, Game, GameError, Vertex, ensure_valid
from .profiles import INF, Order, Profile, lex_leq
from .strategy import ParetoStrategy, synth_pareto

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 16
CP = "cp"
PC = "pc"


class PermissiveError(ValueError):
    pass


def degree_cap() -> int:
    raw = os.environ.get("MWR_DEGREE_CAP")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise PermissiveError(f"MWR_DEGREE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise PermissiveError("MWR_DEGREE_CAP must be positive")
    return cap


@dataclass(frozen=True)
class QuantGame:
    """A 1-weighted game plus one penalty per edge (aligned with ``game.edges``).

    Penalties on edges leaving Player 2 vertices are meaningless and are
    reset to 0 with a warning.
    """

    game: Game
    penalties: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.game.dim != 1:
            raise PermissiveError(f"penalty games are 1-weighted, got dimension {self.game.dim}")
        if len(self.penalties) != len(self.game.edges):
            raise PermissiveError("need exactly one penalty per edge")
        pens = []
        for e, p in zip(self.game.edges, self.penalties):
            if not isinstance(p, int) or p < 0:
                raise PermissiveError(f"penalty {p!r} on {self.game.name(e.src)}->{self.game.name(e.dst)} is not a natural number")
            if p and self.game.owner(e.src) == P2:
                warnings.warn(
                    f"ignoring penalty {p} on {self.game.name(e.src)}->{self.game.name(e.dst)}: "
                    "its source belongs to Player 2",
                    stacklevel=3,
                )
                p = 0
            pens.append(p)
        object.__setattr__(self, "penalties", tuple(pens))

    def penalty(self, src: int, dst: int) -> int:
        for e, p in zip(self.game.edges, self.penalties):
            if e.src == src and e.dst == dst:
                return p
        raise GameError(f"no edge {self.game.name(src)}->{self.game.name(dst)}")

    def cost(self, src: int, dst: int) -> int:
        return self.game.weight(src, dst)[0]

    def blocked_penalty(self, v: int, allowed: Sequence[int]) -> int:
        keep = set(allowed)
        return sum(self.penalty(v, u) for u, _ in self.game.succ[v] if u not in keep)

    @property
    def max_cost(self) -> int:
        return self.game.max_weight

    @property
    def max_penalty_sum(self) -> int:
        return max(
            (sum(self.penalty(v, u) for u, _ in self.game.succ[v]) for v in range(len(self.game))),
            default=0,
        )

    def bounds(self) -> tuple[int, int]:
        """Upper bounds on the optimal worst cost and penalty when finite."""
        n = len(self.game)
        return 2 * n * self.max_cost, 2 * n * self.max_penalty_sum


@dataclass(frozen=True)
class ExtendedGame:
    """The explicit-subset 2-weighted game of a :class:`QuantGame`.

    ``origin[x]`` is ``(v, None)`` for a copy of an original vertex and
    ``(v, subset)`` for the Player 2 vertex standing for "Player 1 at ``v``
    allows ``subset``". Original vertices keep their ids.
    """

    mode: str
    base: QuantGame
    game: Game
    origin: tuple[tuple[int, Optional[tuple[int, ...]]], ...]

    def pair(self, cost, penalty) -> Profile:
        return (cost, penalty) if self.mode == CP else (penalty, cost)

    def unpair(self, x: Profile) -> tuple:
        """``(cost, penalty)`` from a profile of this game."""
        return tuple(x) if self.mode == CP else (x[1], x[0])

    def choice_vertex(self, v: int, subset: Sequence[int]) -> int:
        want = tuple(subset)
        for i, (o, s) in enumerate(self.origin):
            if o == v and s == want:
                return i
        raise PermissiveError(f"no choice vertex for {self.base.game.name(v)} and that subset")


def _subset_name(game: Game, v: int, subset: Sequence[int]) -> str:
    return f"{game.name(v)}:{{{','.join(game.name(u) for u in subset)}}}"


def build_extended(qg: QuantGame, mode: str = CP, cap: Optional[int] = None) -> ExtendedGame:
    mode = mode.lower()
    if mode not in (CP, PC):
        raise PermissiveError(f"unknown mode {mode!r} (expected cp or pc)")
    cap = degree_cap() if cap is None else cap
    g = qg.game
    ensure_valid(g)

    def w(cost: int, pen: int) -> Profile:
        return (cost, pen) if mode == CP else (pen, cost)

    vertices = [Vertex(v.id, v.name, v.owner, v.is_target) for v in g.vertices]
    origin: list[tuple[int, Optional[tuple[int, ...]]]] = [(v.id, None) for v in g.vertices]
    edges: list[Edge] = []
    for v in g.vertices:
        succ = g.succ[v.id]
        if v.owner == P2:
            edges.extend(Edge(v.id, u, w(c[0], 0)) for u, c in succ)
            continue
        if len(succ) > cap:
            raise PermissiveError(
                f"vertex {v.name!r} has {len(succ)} successors, over the degree cap {cap} (set MWR_DEGREE_CAP)"
            )
        for mask in range(1, 1 << len(succ)):
            subset = tuple(u for i, (u, _) in enumerate(succ) if mask >> i & 1)
            x = len(vertices)
            vertices.append(Vertex(x, _subset_name(g, v.id, subset), P2, False))
            origin.append((v.id, subset))
            edges.append(Edge(v.id, x, w(0, qg.blocked_penalty(v.id, subset))))
            edges.extend(Edge(x, u, w(c[0], 0)) for u, c in succ if u in subset)
    eg = Game(2, tuple(vertices), tuple(edges), g.init)
    log.debug("extended game (%s): %d vertices, %d edges", mode, len(vertices), len(edges))
    return ExtendedGame(mode, qg, eg, tuple(origin))


def mce1(qg: QuantGame, v0: int | str | None, cost, penalty) -> bool:
    """Some multi-strategy has worst cost <= ``cost`` and penalty <= ``penalty``."""
    eg = build_extended(qg, CP)
    return ce_comp(eg.game, v0, (cost, penalty))


def mce2(qg: QuantGame, v0: int | str | None, cost, penalty) -> bool:
    """Lexicographic variant, cost first."""
    eg = build_extended(qg, CP)
    return lex_leq(solve(eg.game, Order.LEX).value(v0), (cost, penalty))


def mce3(qg: QuantGame, v0: int | str | None, penalty, cost) -> bool:
    """Lexicographic variant, penalty first."""
    eg = build_extended(qg, PC)
    return lex_leq(solve(eg.game, Order.LEX).value(v0), (penalty, cost))


def mev1(qg: QuantGame, v0: int | str | None) -> tuple[Profile, ...]:
    """Pareto frontier of (worst cost, penalty) pairs."""
    return solve(build_extended(qg, CP).game, Order.COMP).frontier(v0)


def mev2(qg: QuantGame, v0: int | str | None) -> Profile:
    """Least (worst cost, penalty), cost first."""
    return solve(build_extended(qg, CP).game, Order.LEX).value(v0)


def mev3(qg: QuantGame, v0: int | str | None) -> Profile:
    """Least (penalty, worst cost), penalty first."""
    return solve(build_extended(qg, PC).game, Order.LEX).value(v0)


def _least(pred, hi: int) -> Optional[int]:
    """Least ``k`` in ``[0, hi]`` with ``pred(k)``, for monotone ``pred``."""
    k = bisect.bisect_left(range(hi + 1), True, key=pred)
    return k if k <= hi else None


def mev2_search(qg: QuantGame, v0: int | str | None) -> Profile:
    """mev2 by binary search over mce2 inside the a priori bounds."""
    b1, b2 = qg.bounds()
    c = _least(lambda c: mce2(qg, v0, c, b2), b1)
    if c is None:
        return (INF, INF)
    return (c, _least(lambda p: mce2(qg, v0, c, p), b2))


def mev3_search(qg: QuantGame, v0: int | str | None) -> Profile:
    """mev3 by binary search over mce3 inside the a priori bounds."""
    b1, b2 = qg.bounds()
    p = _least(lambda p: mce3(qg, v0, p, b1), b2)
    if p is None:
        return (INF, INF)
    return (p, _least(lambda c: mce3(qg, v0, p, c), b1))


class MultiStrategy(Protocol):
    def choose(self, v: int, acc: tuple) -> tuple[int, ...]: ...


@dataclass(frozen=True)
class ExtractedMultiStrategy:
    """A Pareto strategy on the extended game read back as a multi-strategy.

    ``acc`` is the accumulated ``(cost, penalty)`` of the original history,
    which is exactly the accumulated profile at the corresponding vertex of
    the extended game (up to the component swap in ``pc`` mode).
    """

    extended: ExtendedGame
    strategy: ParetoStrategy

    @property
    def start(self) -> int:
        return self.strategy.start

    def choose(self, v: int, acc: tuple) -> tuple[int, ...]:
        x = self.strategy.choose(v, self.extended.pair(*acc))
        subset = self.extended.origin[x][1]
        assert subset is not None, "extended strategy left the choice gadget"
        return subset


@dataclass(frozen=True)
class TableMultiStrategy:
    """Multi-strategy from explicit entries; ``acc=None`` matches any history.

    Vertices without an entry allow all their successors.
    """

    game: Game
    table: Mapping[tuple[int, Optional[tuple]], tuple[int, ...]]
    start: Optional[int] = None

    def choose(self, v: int, acc: tuple) -> tuple[int, ...]:
        hit = self.table.get((v, tuple(acc)))
        if hit is None:
            hit = self.table.get((v, None))
        if hit is None:
            return tuple(u for u, _ in self.game.succ[v])
        return hit


def all_successors(game: Game) -> TableMultiStrategy:
    return TableMultiStrategy(game, {})


def extract_multistrategy(
    eg: ExtendedGame, result: SolveResult, pair: Profile, v0: int | str | None = None
) -> ExtractedMultiStrategy:
    """``pair`` is given in the extended game's own coordinates."""
    if result.game is not eg.game and result.game != eg.game:
        raise PermissiveError("result was not computed on this extended game")
    return ExtractedMultiStrategy(eg, synth_pareto(result, v0, tuple(pair)))


@dataclass(frozen=True)
class MultiEvaluation:
    cost: float
    penalty: float
    winning: bool
    max_steps: int

    @property
    def pair(self) -> tuple:
        return (self.cost, self.penalty)


def eval_multistrategy(
    qg: QuantGame, ms: MultiStrategy, v0: int | str | None = None, depth: Optional[int] = None
) -> MultiEvaluation:
    """Worst cost and penalty over every play consistent with ``ms``.

    Plays are followed for ``depth`` steps (default ``2|V|``). If one of them
    has not reached a target by then the worst cost is inf and the result is
    not winning; the penalty is still the largest accumulated penalty seen.
    """
    g = qg.game
    depth = 2 * len(g) if depth is None else depth
    if v0 is None:
        v0 = getattr(ms, "start", None)
    start = g.resolve(v0)
    memo: dict[tuple[int, int, int, int], tuple] = {}

    def explore(v: int, cost: int, pen: int, remaining: int) -> tuple:
        # returns (worst cost, worst penalty, steps)
        if g.is_target(v):
            return cost, pen, 0
        if remaining == 0:
            return INF, pen, 0
        key = (v, cost, pen, remaining)
        if key in memo:
            return memo[key]
        if g.owner(v) == P1:
            allowed = ms.choose(v, (cost, pen))
            legal = {u for u, _ in g.succ[v]}
            if not allowed or not set(allowed) <= legal:
                raise PermissiveError(f"multi-strategy allows an illegal set at {g.name(v)}")
            pen += qg.blocked_penalty(v, allowed)
        else:
            allowed = tuple(u for u, _ in g.succ[v])
        wc, wp, steps = -1, -1, 0
        for u in allowed:
            c, p, s = explore(u, cost + qg.cost(v, u), pen, remaining - 1)
            wc, wp, steps = max(wc, c), max(wp, p), max(steps, s + 1)
        memo[key] = (wc, wp, steps)
        return memo[key]

    wc, wp, steps = explore(start, 0, 0, depth)
    return MultiEvaluation(wc, wp, wc != INF, steps)


def twodim_to_penalty_game(source: Game) -> QuantGame:
    """Encode a 2-weighted game as a penalty game.

    Edge ``v -> v'`` with weight ``(c1, c2)`` becomes ``v -> m`` (cost c1),
    ``m -> v'`` (cost 0) and ``m -> bot`` (cost 0, penalty c2), where ``m`` is
    a fresh Player 1 vertex and ``bot`` a shared non-target sink. Allowing the
    escape to ``bot`` loses, so Player 1 blocks it and pays ``c2``.
    """
    if source.dim != 2:
        raise PermissiveError(f"expected a 2-weighted game, got dimension {source.dim}")
    taken = {v.name for v in source.vertices}
    bot = "bot"
    while bot in taken:
        bot += "_"
    vertices = [(v.name, v.owner, v.is_target) for v in source.vertices]
    edges = []
    pens = []
    mids = []
    for k, e in enumerate(source.edges):
        mid = f"e{k}:{source.name(e.src)}>{source.name(e.dst)}"
        while mid in taken:
            mid += "_"
        taken.add(mid)
        mids.append((mid, P1, False))
        edges += [(source.name(e.src), mid, (e.weight[0],)), (mid, source.name(e.dst), (0,)), (mid, bot, (0,))]
        pens += [0, 0, e.weight[1]]
    vertices += mids
    vertices.append((bot, P1, False))
    edges.append((bot, bot, (0,)))
    pens.append(0)
    init = source.name(source.init) if source.init is not None else None
    game = Game.build(1, vertices, edges, init=init)
    return QuantGame(game, tuple(pens))
