from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from replica_knots.polys import IntPolynomial, LaurentPoly, NPolynomial, laurent_s_to_z

ints = st.lists(st.integers(-20, 20), min_size=1, max_size=8)


def test_npolynomial_basics():
    p = NPolynomial({3: 12, 1: 3})
    assert str(p) == "12*N^3 + 3*N"
    assert p(1) == 15
    assert p.to_json() == {"1": "3", "3": "12"}
    assert NPolynomial({2: 0}).is_zero


@given(ints, ints)
def test_exact_div_inverts_mul(a, b):
    pa, pb = IntPolynomial(a), IntPolynomial(b)
    if pb.is_zero:
        return
    assert (pa * pb).exact_div(pb) == pa


def test_exact_div_remainder():
    with pytest.raises(ArithmeticError):
        IntPolynomial([1, 0, 1]).exact_div(IntPolynomial([1, 1]))


@given(st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=6))
def test_laurent_shift_and_eval(terms):
    v = LaurentPoly(terms, "s")
    x = Fraction(3, 2)
    assert v.shift(2)(x) == v(x) * x * x


def test_s_to_z():
    # s^2 + s^-2 = z^2 + 2
    assert laurent_s_to_z({2: 1, -2: 1}) == IntPolynomial([2, 0, 1], "z")
