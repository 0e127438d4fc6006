import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwrgames.profiles import (
    INF,
    DimensionError,
    Order,
    add,
    cw_leq,
    fmt_profile,
    from_json_profile,
    lex_cmp,
    minimal_elements,
    parse_profile,
    to_json_profile,
    top,
)

comp = st.one_of(st.integers(0, 6), st.just(INF))


def profiles(d=2):
    return st.tuples(*[comp] * d)


def test_lex_cmp_examples():
    assert lex_cmp((4, 6), (6, 4)) == -1
    assert lex_cmp((3, 5), (3, 5)) == 0
    assert lex_cmp((INF, 0), (10, INF)) == 1


def test_cw_leq_examples():
    assert not cw_leq((8, 8), (10, 6))
    assert cw_leq((5, 3), (5, 3))
    assert cw_leq((1, 1), (INF, INF))


def test_minimal_elements_examples():
    assert minimal_elements([(6, 4), (4, 6), (4, 4)], Order.COMP) == [(4, 4)]
    assert minimal_elements([(5, 3), (3, 5)], Order.COMP) == [(3, 5), (5, 3)]
    assert minimal_elements([(5, 3), (3, 5)], Order.LEX) == [(3, 5)]
    assert minimal_elements([], Order.LEX) == []


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        lex_cmp((1, 2), (1, 2, 3))
    with pytest.raises(DimensionError):
        cw_leq((1,), (1, 2))
    with pytest.raises(DimensionError):
        minimal_elements([(1,), (1, 2)], Order.COMP)


def test_infinity_absorbs_and_top_is_greatest():
    assert add((INF, 2), (3, 4)) == (INF, 6)
    assert add(top(3), (1, 2, 3)) == top(3)
    for x in [(0, 0), (7, INF), (INF, 0)]:
        assert cw_leq(x, top(2))
        assert lex_cmp(x, top(2)) <= 0


def test_order_parse():
    assert Order.parse("Lexicographic") is Order.LEX
    assert Order.parse("comp") is Order.COMP
    assert Order.LEX.is_total and not Order.COMP.is_total
    with pytest.raises(ValueError):
        Order.parse("pareto")


def test_profile_text_round_trip():
    assert parse_profile("8,8") == (8, 8)
    assert parse_profile("inf, 3") == (INF, 3)
    assert fmt_profile((INF, 3)) == "(inf,3)"
    assert from_json_profile(to_json_profile((INF, 3))) == (INF, 3)
    with pytest.raises(ValueError):
        parse_profile("1,-2")
    with pytest.raises(ValueError):
        parse_profile("1,,2")


@given(profiles(), profiles(), profiles())
def test_componentwise_is_a_partial_order(a, b, c):
    assert cw_leq(a, a)
    if cw_leq(a, b) and cw_leq(b, a):
        assert a == b
    if cw_leq(a, b) and cw_leq(b, c):
        assert cw_leq(a, c)


@given(profiles(3), profiles(3), profiles(3))
def test_lex_is_total_and_extends_componentwise(a, b, c):
    assert lex_cmp(a, b) == -lex_cmp(b, a)
    if lex_cmp(a, b) <= 0 and lex_cmp(b, c) <= 0:
        assert lex_cmp(a, c) <= 0
    if cw_leq(a, b):
        assert lex_cmp(a, b) != 1


@given(st.lists(profiles(), max_size=12), st.sampled_from(list(Order)))
def test_minimal_elements_is_a_covering_antichain(xs, order):
    out = minimal_elements(xs, order)
    leq = cw_leq if order is Order.COMP else (lambda a, b: lex_cmp(a, b) <= 0)
    for i, a in enumerate(out):
        for j, b in enumerate(out):
            if i != j:
                assert not leq(a, b)
    for x in xs:
        assert any(leq(m, x) for m in out)
    if order is Order.LEX:
        assert len(out) == (1 if xs else 0)


@given(profiles(), profiles(), profiles(), profiles())
def test_addition_laws(a, b, c, w):
    assert add(a, b) == add(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    if cw_leq(a, b):
        assert cw_leq(add(a, w), add(b, w))
    if lex_cmp(a, b) <= 0 and all(x != INF for x in w):
        assert lex_cmp(add(a, w), add(b, w)) <= 0
