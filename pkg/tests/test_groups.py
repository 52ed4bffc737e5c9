from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hahnfield.errors import BoundExceeded, NotInGroup
from hahnfield.groups import (
    Vec, add_elem, cmp_elem, integers, lex_power, monoid_contains, monoid_decompose,
    monoid_enumerate, p_hull, rational_subgroup,
)

Z, Z2, H4 = integers(), lex_power(2), p_hull(2, 4)


def test_add_examples():
    assert add_elem(Z, Q(2), Q(3)) == 5
    assert add_elem(Z2, Vec((1, -2)), Vec((0, 5))) == (1, 3)
    assert add_elem(H4, Q(1, 2), Q(1, 4)) == Q(3, 4)


def test_add_overflow():
    with pytest.raises(BoundExceeded):
        H4.elem(Q(1, 32))
    with pytest.raises(NotInGroup):
        Z.elem(Q(1, 3))


def test_cmp_examples():
    assert cmp_elem(Z2, Vec((0, 100)), Vec((1, 0))) < 0
    assert cmp_elem(Z, Q(3), Q(3)) == 0
    assert cmp_elem(H4, Q(1, 4), Q(1, 2)) < 0


def test_enumerate_examples():
    assert monoid_enumerate(Z, [Q(2), Q(3)], Q(0), 6) == [0, 2, 3, 4, 5, 6]
    assert monoid_enumerate(Z2, [Vec((0, 1))], Vec((0, 0)), 3) == [(0, 0), (0, 1), (0, 2)]
    assert monoid_enumerate(H4, [Q(1, 2)], Q(-1), 4) == [-1, Q(-1, 2), 0, Q(1, 2)]


def test_decompose_examples():
    assert monoid_decompose(Z, [Q(2), Q(3)], Q(6)) == [(0, 2), (3, 0)]
    assert monoid_decompose(Z, [Q(2), Q(3)], Q(1)) == []
    assert monoid_decompose(Z2, [Vec((0, 1)), Vec((1, 0))], Vec((1, 0))) == [(0, 1)]


def test_decompose_cap():
    with pytest.raises(BoundExceeded):
        monoid_decompose(Z, [Q(1)], Q(1000), cap=64)


def test_literals():
    assert [g.literal() for g in (Z, Z2, H4, rational_subgroup([Q(1, 2), Q(1, 3)]))] == [
        "Z", "Z^2lex", "Z[1/2]^4", "Q<1/2,1/3>",
    ]
    assert rational_subgroup([Q(1, 2), Q(1, 3)]).step == Q(1, 6)


def _brute_window(gens, hi):
    # all combinations with small exponents, cut at hi
    out = set()
    ranges = [range(0, int(hi / g) + 1) for g in gens]
    for ns in product(*ranges):
        s = sum(n * g for n, g in zip(ns, gens))
        if s <= hi:
            out.add(s)
    return sorted(out)


@given(st.lists(st.integers(1, 7), min_size=1, max_size=3, unique=True))
def test_enumerate_matches_brute_force(gens):
    gens = [Q(g) for g in gens]
    got = monoid_enumerate(Z, gens, Q(0), 12)
    assert all(a < b for a, b in zip(got, got[1:]))
    assert got == _brute_window(gens, got[-1])
    for x in got:
        assert monoid_decompose(Z, gens, x)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=3, unique=True),
       st.tuples(st.integers(0, 3), st.integers(-6, 6)))
def test_lex_decompose_is_exact(gens, target):
    gens = [Vec(g) for g in gens if Vec(g) > (0, 0)]
    if not gens:
        return
    target = Vec(target)
    sols = monoid_decompose(Z2, gens, target, cap=None)
    for sol in sols:
        s = Vec((0, 0))
        for n, g in zip(sol, gens):
            s = s + n * g
        assert s == target
    assert bool(sols) == monoid_contains(Z2, gens, target)


elems = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).map(Vec)


@given(elems, elems, elems)
def test_lex_group_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + (-a) == (0, 0)
    if a < b:
        assert a + c < b + c
