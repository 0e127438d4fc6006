"""Constrained existence: can Player 1 ensure a given cost profile?

Also the quantified subset-sum chain gadget, used as a generator of hard
yes/no instances with a known answer.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .fixpoint import SolveResult, solve
from .game import P1, P2, Game
from .profiles import Order, Profile, lex_leq, sub
from .upset import UpSet


def ce_lex(game: Game, v0: int | str | None, x: Profile, result: Optional[SolveResult] = None) -> bool:
    """Whether the lexicographic value at ``v0`` is at most ``x``."""
    result = result if result is not None else solve(game, Order.LEX)
    return lex_leq(result.value(v0), tuple(x))


def ce_comp(game: Game, v0: int | str | None, x: Profile, result: Optional[SolveResult] = None) -> bool:
    """Whether ``x`` is componentwise above some point of the Pareto frontier at ``v0``."""
    result = result if result is not None else solve(game, Order.COMP)
    return UpSet._canonical(result.frontier(v0)).contains(tuple(x))


def ce_comp_search(game: Game, v0: int | str | None, x: Profile, depth: Optional[int] = None) -> bool:
    """Bounded AND-OR search: some Player 1 choice at each of its vertices such
    that every Player 2 branch reaches a target within ``depth`` steps
    (default ``|V|``) without exceeding the budget ``x``."""
    depth = len(game) if depth is None else depth
    memo: dict[tuple[int, Profile, int], bool] = {}

    def accept(v: int, budget: Profile, remaining: int) -> bool:
        if any(b < 0 for b in budget):
            return False
        if game.is_target(v):
            return True
        if remaining == 0:
            return False
        key = (v, budget, remaining)
        if key in memo:
            return memo[key]
        branches = (accept(u, sub(budget, w), remaining - 1) for u, w in game.succ[v])
        ok = any(branches) if game.owner(v) == P1 else all(branches)
        memo[key] = ok
        return ok

    return accept(game.resolve(v0), tuple(x), depth)


@dataclass(frozen=True)
class QSSInstance:
    values: tuple[int, ...]
    threshold: int
    game: Game
    v0: int
    profile: Profile
    trivially_false: bool


def qss_to_game(values: Sequence[int], threshold: int) -> QSSInstance:
    """Chain gadget for "exists x1 forall x2 exists x3 ... sum x_i a_i = T".

    Vertex ``x_k`` belongs to Player 1 for odd ``k`` and Player 2 for even
    ``k``. It branches to ``x_k^1`` (weight ``(a_k, 0)``) or ``x_k^0``
    (weight ``(0, a_k)``), both of which lead to ``x_{k+1}``; after the last
    variable comes the target ``y``. Every play costs ``(S, sum - S)`` where
    ``S`` is the chosen subset sum, so ensuring ``(T, sum - T)`` means hitting
    ``T`` exactly. With ``T > sum`` the second component is negative and the
    instance is flagged as trivially false.
    """
    vals = tuple(int(a) for a in values)
    if any(a < 0 for a in vals):
        raise ValueError("subset-sum values must be natural numbers")
    n = len(vals)
    vertices = []
    edges = []
    for k in range(1, n + 1):
        a = vals[k - 1]
        vertices.append((f"x{k}", P1 if k % 2 == 1 else P2, False))
        vertices.append((f"x{k}_1", P1, False))
        vertices.append((f"x{k}_0", P1, False))
        nxt = f"x{k + 1}" if k < n else "y"
        edges += [
            (f"x{k}", f"x{k}_1", (a, 0)),
            (f"x{k}", f"x{k}_0", (0, a)),
            (f"x{k}_1", nxt, (0, 0)),
            (f"x{k}_0", nxt, (0, 0)),
        ]
    vertices.append(("y", P1, True))
    edges.append(("y", "y", (0, 0)))
    init = "x1" if n else "y"
    game = Game.build(2, vertices, edges, init=init)
    total = sum(vals)
    return QSSInstance(vals, threshold, game, game.index(init), (threshold, total - threshold), threshold > total)


QSS_MAX_VARIABLES = 20


def brute_qss(values: Sequence[int], threshold: int) -> bool:
    """Evaluate the alternating quantifiers directly."""
    vals = list(values)
    if len(vals) > QSS_MAX_VARIABLES:
        raise ValueError(f"at most {QSS_MAX_VARIABLES} variables, got {len(vals)}")

    def holds(k: int, acc: int) -> bool:
        if k == len(vals):
            return acc == threshold
        options = (holds(k + 1, acc + vals[k]), holds(k + 1, acc))
        # index k is variable k+1: odd variables are existential
        return any(options) if k % 2 == 0 else all(options)

    return holds(0, 0)


def parse_qss_line(line: str) -> tuple[list[int], int]:
    """Parse ``qss a1 a2 ... an T``."""
    parts = line.split()
    if not parts or parts[0] != "qss" or len(parts) < 2:
        raise ValueError(f"expected 'qss a1 ... an T', got {line.strip()!r}")
    nums = [int(p) for p in parts[1:]]
    if any(n < 0 for n in nums):
        raise ValueError("qss values and threshold must be natural numbers")
    return nums[:-1], nums[-1]


def qss_instance_ce(inst: QSSInstance) -> bool:
    """Componentwise constrained existence on a gadget (false when flagged)."""
    if inst.trivially_false:
        return False
    return ce_comp(inst.game, inst.v0, inst.profile)
