import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwrgames.fixpoint import InvariantError, check_invariants, frontier, initial, solve, step
from mwrgames.game import P1, Game
from mwrgames.generate import random_game
from mwrgames.oracle import brute_frontiers
from mwrgames.profiles import INF, Order
from mwrgames.upset import UpSet

LEX_TABLE = {
    "v0": (8, 8), "v1": (4, 6), "v2": (4, 6), "v3": (4, 4), "v4": (3, 5), "v5": (3, 3),
    "v6": (1, 1), "v7": (1, 1), "v8": (2, 2), "v9": (0, 0), "v10": (1, 1),
}
COMP_TABLE = {name: ((x,) if name not in ("v1", "v2", "v4") else None) for name, x in LEX_TABLE.items()}
COMP_TABLE.update({"v1": ((4, 6), (6, 4)), "v2": ((4, 6), (6, 4)), "v4": ((3, 5), (5, 3))})


def by_name(result):
    return {result.game.name(v): f for v, f in enumerate(result.frontiers)}


def test_running_example_lexicographic(running):
    r = solve(running, Order.LEX)
    assert by_name(r) == {k: (x,) for k, x in LEX_TABLE.items()}
    assert r.value() == (8, 8)
    assert frontier(r, "v5") == ((3, 3),)


def test_running_example_componentwise(running):
    r = solve(running, Order.COMP)
    assert by_name(r) == COMP_TABLE
    assert frontier(r, "v1") == ((4, 6), (6, 4))
    with pytest.raises(ValueError):
        r.value()


@pytest.mark.parametrize("order", list(Order))
def test_stabilization_round(running, order):
    r = solve(running, order)
    assert r.iterations == 5
    assert r.k_star == 4


def test_intermediate_rounds_match_the_worked_example(running):
    r = solve(running, Order.COMP, trace=True)
    h = r.history
    ix = running.index
    assert h[1][ix("v9")] == ((0, 0),)
    assert all(h[1][ix(v)] == ((1, 1),) for v in ("v6", "v7", "v10"))
    assert h[1][ix("v4")] == ((INF, INF),)
    assert h[2][ix("v4")] == ((3, 5), (5, 3))
    assert h[3][ix("v0")] == ((INF, INF),)
    assert all(h[3][ix(v)] == ((4, 6), (6, 4)) for v in ("v1", "v2", "v3"))
    assert h[3][ix("v5")] == ((3, 3),)
    assert h[4][ix("v0")] == ((8, 8),)
    assert h[4][ix("v3")] == ((4, 4),)


@pytest.mark.parametrize("order", list(Order))
def test_incremental_rounds_equal_full_synchronous_steps(running, order):
    r = solve(running, order, trace=True)
    for k in range(len(r.history) - 1):
        assert tuple(step(running, r.history[k], order)) == r.history[k + 1]
    assert tuple(step(running, r.frontiers, order)) == r.frontiers


def test_targets_stay_pinned(running):
    cur = initial(running)
    for _ in range(6):
        cur = step(running, cur, Order.COMP)
        assert cur[running.index("v9")] == ((0, 0),)


def test_no_target_means_nothing_ensured():
    g = Game.build(2, [("a", P1, False), ("b", 2, False)], [("a", "b", (1, 1)), ("b", "a", (0, 2))])
    for order in Order:
        r = solve(g, order)
        assert all(f == ((INF, INF),) for f in r.frontiers)


def test_choice_tables(running):
    r = solve(running, Order.COMP)
    v4 = running.index("v4")
    assert set(r.choices[v4]) == {(3, 5), (5, 3)}
    assert r.choices[v4][(3, 5)].successor == running.index("v7")
    assert r.choices[v4][(5, 3)].successor == running.index("v6")
    assert r.choices[v4][(3, 5)].residual == (1, 1)
    assert r.choices[running.index("v0")] == {}  # Player 2 vertex
    assert r.first_occurrence[v4][(3, 5)] == 2
    assert r.first_occurrence[running.index("v0")][(8, 8)] == 4


def test_tie_break_prefers_earlier_successor():
    g = Game.build(1, [("a", P1, False), ("b", P1, True), ("c", P1, True)], [("a", "c", (1,)), ("a", "b", (1,)), ("b", "b", (0,)), ("c", "c", (0,))])
    r = solve(g, Order.COMP)
    assert r.choices[0][(1,)].successor == g.index("c")


def test_step_rejects_wrong_length(running):
    with pytest.raises(ValueError):
        step(running, [((0, 0),)], Order.COMP)


def test_check_invariants_detects_tampering(running):
    r = solve(running, Order.COMP)
    v4 = running.index("v4")
    broken = list(r.choices)
    table = dict(broken[v4])
    entry = table[(3, 5)]
    table[(3, 5)] = dataclasses.replace(entry, successor=running.index("v6"))
    broken[v4] = table
    with pytest.raises(InvariantError):
        check_invariants(dataclasses.replace(r, choices=tuple(broken)))
    occ = list(r.first_occurrence)
    occ[v4] = {x: 0 for x in occ[v4]}
    with pytest.raises(InvariantError):
        check_invariants(dataclasses.replace(r, first_occurrence=tuple(occ)))
    fr = list(r.frontiers)
    fr[running.index("v9")] = ((1, 1),)
    with pytest.raises(InvariantError):
        check_invariants(dataclasses.replace(r, frontiers=tuple(fr)))


def _assert_structure(game, r):
    n = len(game)
    assert r.iterations <= n + 1
    for k in range(len(r.history) - 1):
        for v in range(n):
            before, after = r.history[k][v], r.history[k + 1][v]
            if r.order is Order.COMP:
                assert UpSet._canonical(before).issubset(UpSet._canonical(after))
            else:
                assert len(after) == 1 and after[0] <= before[0]
    bound = (max(game.max_weight, 1) * n) ** game.dim
    for v in range(n):
        finite = [x for x in r.frontiers[v] if INF not in x]
        assert len(finite) <= bound
        assert all(INF not in x or set(x) == {INF} for x in r.frontiers[v])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(list(Order)))
def test_random_games_match_oracle_and_invariants(seed, order):
    game = random_game(seed)
    r = solve(game, order, trace=True)
    assert list(r.frontiers) == brute_frontiers(game, order)
    _assert_structure(game, r)
    check_invariants(r)
