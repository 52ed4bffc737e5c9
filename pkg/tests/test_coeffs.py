from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hahnfield.coeffs import (
    ModP, PerfectHull, PrimeField, RatFunc, RationalFunctions, Rationals, coeff_arith, frobenius,
    p_th_root,
)
from hahnfield.errors import DivisionByZero, RootDepthExceeded
from hahnfield.sampling import rng_for

FIELDS = [Rationals(), PrimeField(5), RationalFunctions(3, "y"), PerfectHull(2, "y", 4)]


def test_examples():
    F5 = PrimeField(5)
    assert coeff_arith("add", F5.from_int(3), F5.from_int(4)) == F5.from_int(2)
    assert p_th_root(PrimeField(3), ModP(2, 3)) == ModP(2, 3)
    PH = PerfectHull(2, "y", 4)
    r = p_th_root(PH, PH.gen())
    assert r * r == PH.gen()
    assert PH.format(r) == "root2(y)"
    with pytest.raises(TypeError):
        p_th_root(Rationals(), Q(2))


def test_root_depth_bound():
    PH = PerfectHull(2, "y", 2)
    x = PH.gen()
    for _ in range(2):
        x = x.pth_root()
    with pytest.raises(RootDepthExceeded):
        x.pth_root()


def test_rational_function_normalizes():
    y = RationalFunctions(5).gen()
    assert (y * y - 1) / (y - 1) == y + 1
    assert ((y * y - 1) / (y - 1)).den == (1,)
    with pytest.raises(DivisionByZero):
        RatFunc((1,), (0,), 5)


def test_frobenius_in_char_p():
    k = RationalFunctions(3)
    y = k.gen()
    assert frobenius(k, y + 1) == y ** 3 + 1


@pytest.mark.parametrize("k", FIELDS, ids=lambda k: k.literal())
@given(seed=st.integers(0, 10 ** 6))
def test_field_axioms(k, seed):
    rng = rng_for(seed)
    a, b, c = (k.random(rng) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + k.zero() == a and a * k.one() == a
    assert a - a == k.zero()
    if a:
        assert a * coeff_arith("inv", a) == k.one()
    else:
        with pytest.raises(DivisionByZero):
            coeff_arith("inv", a)
