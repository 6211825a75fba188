from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qschur.cartan import builtin_cartan
from qschur.errors import IndexOutOfRange, NotDominant
from qschur.hwmodule import freudenthal
from qschur.weyl import (
    dominance_leq,
    dominant_below,
    dominant_representative,
    is_saturated,
    largest_saturated_subset,
    orbit,
    parse_weight_set,
    format_weight_set,
    reflect,
    root_coefficients,
    saturate,
)

A1 = builtin_cartan("A", 1)
A2 = builtin_cartan("A", 2)
B2 = builtin_cartan("B", 2)
G2 = builtin_cartan("G", 2)


def test_reflect_examples():
    assert reflect(A1, 0, (0,)) == (0,)
    assert reflect(A2, 0, (1, 0)) == (-1, 1)
    assert reflect(A1, 0, (3,)) == (-3,)
    with pytest.raises(IndexOutOfRange):
        reflect(A1, 1, (0,))


def test_orbit_examples():
    assert orbit(A1, [(0,)]) == ((0,),)
    assert orbit(A1, [(2,)]) == ((-2,), (2,))
    assert len(orbit(A2, [(1, 1)])) == 6
    assert len(orbit(G2, [(1, 1)])) == 12
    assert len(orbit(B2, [(1, 0)])) == 4


def test_root_coefficients_examples():
    assert root_coefficients(A1, (2,)) == (1,)
    assert root_coefficients(A2, (1, 1)) == (1, 1)
    assert root_coefficients(A1, (1,)) == (Fraction(1, 2),)


def test_dominance_examples():
    assert dominance_leq(A1, (0,), (2,))
    assert dominance_leq(A2, (1, 1), (1, 1))
    assert not dominance_leq(A1, (1,), (2,))


def test_dominant_representative_examples():
    assert dominant_representative(A1, (-2,)) == (2,)
    assert dominant_representative(A2, (-1, 1)) == (1, 0)
    assert dominant_representative(G2, (2, 3)) == (2, 3)


def test_dominant_below_examples():
    assert set(dominant_below(A1, (2,))) == {(2,), (0,)}
    assert dominant_below(A1, (1,)) == ((1,),)
    assert set(dominant_below(A2, (1, 1))) == {(1, 1), (0, 0)}
    with pytest.raises(NotDominant):
        dominant_below(A1, (-1,))


def test_saturation_examples():
    assert set(saturate(A1, [(2,)])) == {(2,), (0,)}
    assert saturate(A1, [(1,)]) == ((1,),)
    assert set(saturate(A2, [(1, 1)])) == {(1, 1), (0, 0)}
    assert is_saturated(A1, [(0,), (2,)])
    assert not is_saturated(A1, [(2,)])
    assert is_saturated(A1, [])
    with pytest.raises(NotDominant):
        saturate(A1, [(-2,)])


def test_largest_saturated_subset():
    assert largest_saturated_subset(A1, [(2,)]) == ()
    assert largest_saturated_subset(A1, [(1,), (2,)]) == ((1,),)
    assert largest_saturated_subset(A2, [(0, 0), (1, 1), (2, 0)]) == ((0, 0), (1, 1))
    assert largest_saturated_subset(A2, [(0, 0), (1, 1), (3, 0)]) == ((0, 0), (1, 1), (3, 0))


def test_weight_set_syntax():
    ws = parse_weight_set("1,0; 0,1;1,0")
    assert ws == ((0, 1), (1, 0))
    assert format_weight_set(ws) == "0,1;1,0"


types = st.sampled_from([A1, A2, B2, G2, builtin_cartan("C", 3)])


@st.composite
def weight_for(draw):
    c = draw(types)
    w = tuple(draw(st.integers(-4, 4)) for _ in range(c.n))
    return c, w


@settings(max_examples=200, deadline=None)
@given(weight_for())
def test_reflection_involutive_and_orbit_stable(cw):
    c, w = cw
    for i in range(c.n):
        assert reflect(c, i, reflect(c, i, w)) == w
    orb = orbit(c, [w])
    members = set(orb)
    assert w in members
    for x in orb:
        for i in range(c.n):
            assert reflect(c, i, x) in members
    assert dominant_representative(c, w) in members
    assert sum(1 for x in orb if all(y >= 0 for y in x)) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([A2, B2]), st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=6))
def test_dominance_partial_order(c, sample):
    for x in sample:
        assert dominance_leq(c, x, x)
        for y in sample:
            if x != y and dominance_leq(c, x, y):
                assert not dominance_leq(c, y, x)
            for z in sample:
                if dominance_leq(c, x, y) and dominance_leq(c, y, z):
                    assert dominance_leq(c, x, z)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([A2, B2, G2]), st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3))
def test_saturate_idempotent_extensive(c, pi):
    s = saturate(c, pi)
    assert set(pi) <= set(s)
    assert saturate(c, s) == s
    assert is_saturated(c, s)


@pytest.mark.parametrize("c,mu", [(A2, (2, 1)), (B2, (1, 2)), (G2, (1, 1)), (builtin_cartan("C", 3), (0, 1, 1))])
def test_dominant_below_in_character_support(c, mu):
    support = set(freudenthal(c, mu).mult)
    for lam in dominant_below(c, mu):
        assert lam in support
