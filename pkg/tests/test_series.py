from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from hahnfield.config import Config
from hahnfield.cuts import Cut
from hahnfield.errors import BoundExceeded, HorizonExceeded, ZeroDivisor
from hahnfield.groups import Vec, integers, rational_subgroup
from hahnfield.coeffs import Rationals
from hahnfield.literals import parse_cut
from hahnfield.sampling import random_elem, random_series, rng_for
from hahnfield.series import (
    HahnField, RootSection, TableFactorSet, TrivialFactorSet, cocycle_verify, derive_factor_set,
)

seeds = st.integers(0, 10 ** 6)


def _axioms(ring, seed):
    rng = rng_for(seed)
    a, b, c = (random_series(ring, rng) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ring.one() == a and a + ring.zero() == a
    assert a - a == ring.zero()


@given(seeds)
def test_ring_axioms_trivial(QZ, seed):
    _axioms(QZ, seed)


@given(seeds)
def test_ring_axioms_lex(QZ2, seed):
    _axioms(QZ2, seed)


@given(seeds)
def test_ring_axioms_derived(QHalf, seed):
    _axioms(QHalf, seed)


@given(seeds)
def test_ring_axioms_char_p(F2y, seed):
    _axioms(F2y, seed)


def test_derived_twist(QHalf):
    s = QHalf.t(Q(1, 2))
    assert s * s == QHalf.monomial(1, 2)
    assert s * QHalf.t(Q(-1, 2)) == QHalf.one()
    assert QHalf.factor_set.literal() == "derived:n=2,c=2"


def test_homomorphic_section_is_trivial():
    k = Rationals()
    assert isinstance(derive_factor_set(RootSection(k, 2, 1)), TrivialFactorSet)


def test_cocycle(QHalf):
    g = QHalf.group
    rng = rng_for(3)
    samples = [tuple(random_elem(g, rng, 6) for _ in range(3)) for _ in range(300)]
    rep = cocycle_verify(QHalf.factor_set, samples, g)
    assert rep["pass"] and rep["checked"] == 300
    bad = TableFactorSet(Rationals(), {(Q(-1), Q(1)): Q(2), (Q(1), Q(-1)): Q(2)}, "bad")
    rep = cocycle_verify(bad, [(Q(1), Q(-1), Q(0))], integers())
    assert not rep["pass"]
    assert rep["axioms"]["4"]["witness"] == ["-1", "1"]


def test_invert_one_minus_t(QZ):
    inv = (QZ.one() - QZ.t(1)).inverse()
    assert O.dense(inv, 50) == O.inverse_prefix([1, -1], 50) == [1] * 50


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5).filter(lambda a: a[0] != 0))
def test_inverse_matches_oracle(QZ, coeffs):
    x = QZ.from_terms([(i, c) for i, c in enumerate(coeffs) if c])
    assert O.dense(x.inverse(), 25) == O.inverse_prefix(coeffs, 25)
    assert (x * x.inverse()).agrees_to(QZ.one(), 25)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_product_matches_convolution(QZ, a, b):
    x = QZ.from_terms([(i, c) for i, c in enumerate(a) if c])
    y = QZ.from_terms([(i, c) for i, c in enumerate(b) if c])
    assert O.dense(x * y, 10) == O.conv_prefix(a, b, 10)


def test_lazy_product_and_inverse(QZ):
    g = QZ.geom(1)
    sq = g * g
    assert O.dense(sq, 12) == [k + 1 for k in range(12)]
    assert O.dense(g * (QZ.one() - QZ.t(1)), 12) == [1] + [0] * 11
    assert O.dense(g.inverse(), 6) == [1, -1, 0, 0, 0, 0]


def test_inverse_of_lex_series(QZ2):
    x = QZ2.one() + QZ2.t(Vec((0, 1)))
    inv = x.inverse()
    assert [c for _, c in inv.grid_head(5)] == [1, -1, 1, -1, 1]
    with pytest.raises(ZeroDivisor):
        QZ2.zero().inverse()


def test_derived_inverse(QHalf):
    x = QHalf.one() - QHalf.t(Q(1, 2))
    assert (x * x.inverse()).agrees_to(QHalf.one(), 30)


def test_truncate(QZ):
    x = QZ.from_terms([(-1, 1), (0, 1), (3, 1)])
    assert x.truncate(parse_cut("0+", QZ.group)) == QZ.from_terms([(-1, 1), (0, 1)])
    assert x.truncate(Q(0)) == QZ.t(-1)
    assert x.truncate(Cut.pos_inf(QZ.group)) == x
    lazy = QZ.geom(1).truncate(parse_cut("3+", QZ.group))
    assert lazy.is_finite and O.dense(lazy, 6) == [1, 1, 1, 1, 0, 0]


def test_unanchored_lazy_inverse_is_refused(QZ):
    y = QZ.geom(1) - QZ.one()
    with pytest.raises(BoundExceeded):
        y.inverse()


def test_horizon_is_enforced():
    ring = HahnField(integers(), Rationals(), config=Config(horizon=10))
    with pytest.raises(HorizonExceeded):
        ring.geom(1).coeff(Q(50))


def test_stream_is_order_level(QH):
    s = QH.stream([(Q(-1, 2), 1), (Q(-1, 4), 1), (Q(-1, 8), 1)])
    assert s.valuation() == Q(-1, 2)
    with pytest.raises(TypeError):
        s * s


def test_char_p_frobenius(F2y):
    x = F2y.one() + F2y.t(1)
    assert x * x == F2y.one() + F2y.t(2)


def test_twisted_cyclic_group():
    k = Rationals()
    ring = HahnField(rational_subgroup([Q(1, 3)]), k, derive_factor_set(RootSection(k, 3, 5)))
    s = ring.t(Q(1, 3))
    assert s * s * s == ring.monomial(1, 5)
