import pytest

from mwrgames.fixpoint import solve
from mwrgames.game import P1, P2, Game
from mwrgames.profiles import INF, Order
from mwrgames.strategy import (
    PositionalStrategy,
    StrategyError,
    enumerate_positional,
    synth_lex_positional,
    synth_pareto,
    verify_strategy,
)


@pytest.fixture(scope="module")
def running_comp(running):
    return solve(running, Order.COMP)


def test_pareto_strategy_remembers_the_adversary_choice(running, running_comp):
    s = synth_pareto(running_comp, "v0", (8, 8))
    v4 = running.index("v4")
    assert s.choose(v4, (5, 3)) == running.index("v7")
    assert s.choose(v4, (3, 5)) == running.index("v6")


def test_pareto_strategy_from_v4(running, running_comp):
    s = synth_pareto(running_comp, "v4", (3, 5))
    assert s.choose(running.index("v4"), (0, 0)) == running.index("v7")


def test_pareto_strategy_at_target_has_nothing_to_decide(running, running_comp):
    s = synth_pareto(running_comp, "v9", (0, 0))
    rep = verify_strategy(running, s, (0, 0))
    assert rep.passed and rep.max_steps == 0 and rep.worst == (0, 0)


def test_cover_fallback_is_first_successor(running, running_comp):
    s = synth_pareto(running_comp, "v0", (8, 8))
    v4 = running.index("v4")
    assert s.cover(v4, (8, 8)) == []
    assert s.choose(v4, (8, 8)) == running.succ[v4][0][0]


def test_synthesis_errors(running, running_comp):
    with pytest.raises(StrategyError):
        synth_pareto(running_comp, "v0", (9, 9))
    with pytest.raises(StrategyError):
        synth_pareto(running_comp, "v0", (INF, 8))
    with pytest.raises(StrategyError):
        synth_pareto(solve(running, Order.LEX), "v0", (8, 8))
    with pytest.raises(StrategyError):
        synth_lex_positional(running_comp)


def test_pareto_strategy_verifies(running, running_comp):
    rep = verify_strategy(running, synth_pareto(running_comp, "v0", (8, 8)), (8, 8), 11)
    assert rep.passed
    assert rep.worst == (8, 8)
    assert rep.counterexample is None


def test_positional_strategy_fails_on_restricted_arena(restricted):
    g = restricted
    s = PositionalStrategy(g, {g.index("v4"): g.index("v6")})
    rep = verify_strategy(g, s, (8, 8), start="v0")
    assert not rep.passed
    assert rep.counterexample == ["v0", "v1", "v4", "v6", "v9"]
    assert rep.counterexample_cost == (10, 6)


def test_depth_exhaustion_is_a_failure(running, running_comp):
    rep = verify_strategy(running, synth_pareto(running_comp, "v0", (8, 8)), (8, 8), 3)
    assert not rep.passed
    assert rep.counterexample_cost == (INF, INF)


def test_lex_positional(running):
    r = solve(running, Order.LEX)
    th = synth_lex_positional(r)
    assert th.choose(running.index("v4")) == running.index("v7")
    assert th.choose(running.index("v3")) == running.index("v5")
    assert running.index("v9") not in th.mapping
    assert th.unmapped == ()
    for v in range(len(running)):
        rep = verify_strategy(running, th, r.value(v), len(running), Order.LEX, start=v)
        assert rep.passed and rep.worst == r.value(v)


def test_lex_positional_flags_infinite_values():
    g = Game.build(1, [("a", P1, False), ("t", P1, True)], [("a", "a", (1,)), ("t", "t", (0,))])
    th = synth_lex_positional(solve(g, Order.LEX))
    assert th.unmapped == (0,)


def test_enumerate_restricted_arena(restricted):
    rows = enumerate_positional(restricted, "v0")
    assert sorted(x for _, x in rows) == [(8, 10), (10, 8)]
    assert not any(x[0] <= 8 and x[1] <= 8 for _, x in rows)


def test_enumerate_from_target(running):
    rows = enumerate_positional(running, "v9", Order.LEX)
    assert rows and all(x == (0, 0) for _, x in rows)


def test_enumerate_chain():
    g = Game.build(2, [("v", P1, False), ("t", P2, True)], [("v", "t", (3, 1)), ("t", "t", (0, 0))])
    rows = enumerate_positional(g, "v")
    assert [x for _, x in rows] == [(3, 1)]


def test_enumerate_cap(running):
    with pytest.raises(StrategyError):
        enumerate_positional(running, "v0", cap=2)
