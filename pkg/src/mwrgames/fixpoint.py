"""Iterated computation of the minimal ensured cost profiles of every vertex.

Starting from ``{0}`` on targets and ``{inf}`` elsewhere, each synchronous
round replaces the antichain of a Player 1 vertex by the minimal elements of
the union of its successors' translated antichains, and that of a Player 2
vertex by the minimal elements of their intersection. Under the
lexicographic order the antichains are singletons and the round reduces to a
min/max over successors.

Player 1 vertices additionally get a choice table mapping each generator to
the successor (and residual profile there) that realizes it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .game import P1, Game, ensure_valid
from .profiles import Order, Profile, fmt_antichain, is_finite, is_top, lex_leq, sub, top, zero
from .upset import UpSet, intersect_all

log = logging.getLogger(__name__)

Antichain = tuple  # tuple[Profile, ...], sorted, minimal


class InvariantError(AssertionError):
    """A structural property of the fixpoint iteration was violated."""


@dataclass(frozen=True)
class ChoiceEntry:
    profile: Profile
    successor: int
    residual: Profile


@dataclass
class SolveResult:
    game: Game
    order: Order
    frontiers: tuple[Antichain, ...]
    choices: tuple[dict[Profile, ChoiceEntry], ...]
    first_occurrence: tuple[dict[Profile, int], ...]
    iterations: int
    history: Optional[list[tuple[Antichain, ...]]] = field(default=None, repr=False)

    @property
    def k_star(self) -> int:
        """Index of the last round that changed anything."""
        return self.iterations - 1

    def frontier(self, v: int | str | None = None) -> Antichain:
        return self.frontiers[self.game.resolve(v)]

    def upset(self, v: int | str | None = None) -> UpSet:
        return UpSet._canonical(self.frontier(v))

    def value(self, v: int | str | None = None) -> Profile:
        """The upper value of a vertex (lexicographic results only)."""
        if self.order is not Order.LEX:
            raise ValueError("value() is only defined for lexicographic results")
        return self.frontier(v)[0]


def initial(game: Game) -> list[Antichain]:
    d = game.dim
    return [(zero(d),) if v.is_target else (top(d),) for v in game.vertices]


def _update(game: Game, cur: Sequence[Antichain], v: int, order: Order) -> Antichain:
    if game.vertices[v].is_target:
        return (zero(game.dim),)
    succ = game.succ[v]
    p1 = game.vertices[v].owner == P1
    if order is Order.LEX:
        cands = [tuple(a + b for a, b in zip(cur[u][0], w)) for u, w in succ]
        return (min(cands),) if p1 else (max(cands),)
    parts = [UpSet._canonical(cur[u]).translate(w) for u, w in succ]
    if p1:
        gens: list[Profile] = []
        for s in parts:
            gens.extend(s.generators)
        return UpSet(gens).generators
    return intersect_all(parts).generators


def step(game: Game, current: Sequence[Antichain], order: Order) -> list[Antichain]:
    """One synchronous round computed from the snapshot ``current``."""
    if len(current) != len(game.vertices):
        raise ValueError("need exactly one antichain per vertex")
    return [_update(game, current, v, order) for v in range(len(game.vertices))]


def _pick_choice(game: Game, cur: Sequence[Antichain], v: int, x: Profile) -> ChoiceEntry:
    # earliest successor in input order; the residual is then determined by x
    for u, w in game.succ[v]:
        r = sub(x, w)
        if r in cur[u]:
            return ChoiceEntry(x, u, r)
    raise InvariantError(f"no witness for {x} at {game.name(v)}")


def solve(game: Game, order: Order = Order.COMP, *, check: bool = True, trace: bool = False) -> SolveResult:
    """Run the fixpoint iteration to stabilization.

    Only vertices with a successor that changed in the previous round are
    recomputed; the others would reproduce their current antichain, so the
    result is identical to recomputing everything each round.

    With ``check`` the per-round invariants (monotonicity, singleton values
    under the lexicographic order, round bound, generator-count bound) raise
    :class:`InvariantError` on violation. ``trace`` keeps every round.
    """
    ensure_valid(game)
    n = len(game.vertices)
    d = game.dim
    cur = initial(game)
    first: list[dict[Profile, int]] = [{g: 0 for g in a} for a in cur]
    choices: list[dict[Profile, ChoiceEntry]] = [{} for _ in range(n)]
    history = [tuple(cur)] if trace else None
    bound = (max(game.max_weight, 1) * n) ** d
    dirty = [v for v in range(n) if not game.vertices[v].is_target]
    k = 0
    while True:
        k += 1
        if check and k > n + 1:
            raise InvariantError(f"no stabilization after {n + 1} rounds")
        changed = []
        new_vals = {}
        for v in dirty:
            nv = _update(game, cur, v, order)
            if nv != cur[v]:
                new_vals[v] = nv
                changed.append(v)
        if not changed:
            break
        for v in changed:
            nv = new_vals[v]
            old = cur[v]
            if check:
                _check_round(game, order, v, old, nv, bound)
            occ = first[v]
            first[v] = {x: occ.get(x, k) for x in nv}
            if game.vertices[v].owner == P1:
                table = choices[v]
                fresh = {}
                for x in nv:
                    if not is_finite(x):
                        continue
                    fresh[x] = table[x] if x in table else _pick_choice(game, cur, v, x)
                choices[v] = fresh
        for v, nv in new_vals.items():
            cur[v] = nv
        if trace:
            history.append(tuple(cur))
        touched = set()
        for v in changed:
            touched.update(game.pred[v])
        dirty = sorted(u for u in touched if not game.vertices[u].is_target)
    result = SolveResult(
        game=game,
        order=order,
        frontiers=tuple(cur),
        choices=tuple(choices),
        first_occurrence=tuple(first),
        iterations=k,
        history=history,
    )
    log.debug("solved %d vertices (%s) in %d rounds", n, order.value, k)
    if check:
        check_invariants(result)
    return result


def _check_round(game: Game, order: Order, v: int, old: Antichain, new: Antichain, bound: int) -> None:
    name = game.name(v)
    if order is Order.LEX:
        if len(new) != 1:
            raise InvariantError(f"non-singleton value at {name}: {fmt_antichain(new)}")
        if not lex_leq(new[0], old[0]):
            raise InvariantError(f"value increased at {name}: {old[0]} -> {new[0]}")
    else:
        up = UpSet._canonical(new)
        if not all(up.contains(g) for g in old):
            raise InvariantError(f"ensured set shrank at {name}: {fmt_antichain(old)} -> {fmt_antichain(new)}")
    finite = 0
    for x in new:
        if is_finite(x):
            finite += 1
        elif not is_top(x):
            raise InvariantError(f"mixed finite/inf profile {x} at {name}")
    if finite > bound:
        raise InvariantError(f"{finite} generators at {name} exceed the bound {bound}")


def check_invariants(result: SolveResult) -> None:
    """Choice-table consistency and first-occurrence descent on a finished result."""
    game = result.game
    for v in range(len(game.vertices)):
        vert = game.vertices[v]
        gens = result.frontiers[v]
        if vert.is_target:
            if gens != (zero(game.dim),):
                raise InvariantError(f"target {vert.name} has frontier {fmt_antichain(gens)}")
            continue
        if result.order is Order.LEX and len(gens) != 1:
            raise InvariantError(f"non-singleton value at {vert.name}")
        if vert.owner != P1:
            continue
        table = result.choices[v]
        for x in gens:
            if not is_finite(x):
                continue
            entry = table.get(x)
            if entry is None:
                raise InvariantError(f"missing choice for {x} at {vert.name}")
            w = game.weight(v, entry.successor)
            if tuple(a + b for a, b in zip(entry.residual, w)) != x:
                raise InvariantError(f"choice for {x} at {vert.name} does not add up")
            if entry.residual not in result.frontiers[entry.successor]:
                raise InvariantError(f"residual {entry.residual} is not a generator at {game.name(entry.successor)}")
            n_here = result.first_occurrence[v][x]
            n_next = result.first_occurrence[entry.successor][entry.residual]
            if not n_next < n_here:
                raise InvariantError(f"first occurrence does not descend at {vert.name}: {n_next} >= {n_here}")


def frontier(result: SolveResult, v: int | str | None = None) -> Antichain:
    """Pareto frontier (componentwise) or upper value singleton (lexicographic)."""
    return result.frontier(v)
