import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from replica_knots import moments
from replica_knots.errors import CapExceeded, InvalidCoupling
from replica_knots.moments import NPolynomial, TraceMonomial


def monomials(max_legs):
    for k in range(1, max_legs + 1):
        for parts in combinations_with_replacement(range(1, max_legs + 1), k):
            if sum(parts) <= max_legs:
                yield parts


def test_single_gaussian_fixes_loop_convention():
    assert moments.moment([2], "brute") == NPolynomial({2: 1})
    assert moments.moment([1, 1], "brute") == NPolynomial({1: 1})


def test_known_polynomials():
    assert moments.moment([4], "brute") == NPolynomial({3: 2, 1: 1})
    assert moments.moment([3, 3], "brute") == NPolynomial({3: 12, 1: 3})
    assert moments.moment([6]) == NPolynomial({4: 5, 2: 10})


def test_replica_values():
    assert moments.replica_coefficient([3, 3]) == 3
    assert moments.replica_coefficient([5, 5], "brute") == 165
    assert moments.replica_coefficient([3, 3, 3, 3]) == 0


def test_odd_degree_is_zero():
    assert moments.moment([3, 3, 3]).is_zero
    assert moments.moment([3, 3, 3], "brute").is_zero


@pytest.mark.parametrize("parts", list(monomials(10)))
def test_recursion_matches_enumeration(parts):
    assert moments.moment(parts) == moments.moment(parts, "brute")


def test_census_matches_python_enumeration():
    for parts in [(4,), (3, 3), (2, 2, 2), (4, 1, 1), (5, 3)]:
        counts = {}
        for d in moments.pairing_diagrams(parts):
            counts[d.loops] = counts.get(d.loops, 0) + 1
        assert counts == moments.diagram_census(parts)


@pytest.mark.parametrize("j", range(1, 9))
def test_harer_zagier_matches_recursion(j):
    hz = moments.single_trace_moment(j)
    assert hz == moments.wick_moment_recursive([2 * j])
    if 2 * j <= 14:
        assert hz == moments.moment([2 * j], "brute")


@given(st.lists(st.integers(1, 7), min_size=1, max_size=5).filter(lambda p: sum(p) % 2 == 0 and sum(p) <= 16))
def test_total_count_and_parity(parts):
    p = moments.moment(parts)
    m = sum(parts)
    assert p(1) == moments.double_factorial(m - 1)
    # exponents share the parity of m/2 + k
    parity = (m // 2 + len(parts)) % 2
    assert all(e % 2 == parity for e in p.coeffs)
    assert p.degree <= m // 2 + len(parts)


def test_caps():
    with pytest.raises(CapExceeded):
        moments.moment([3] * 6, "brute", budget=1000)
    with pytest.raises(CapExceeded):
        moments.moment([10, 10], "brute")


def test_parse():
    assert TraceMonomial.parse("3,3").powers == (3, 3)
    assert TraceMonomial.parse("[AB],[AA]").words == ("AB", "AA")
    for bad in ("", "3,,3", "[AC]", "0"):
        with pytest.raises(ValueError):
            TraceMonomial.parse(bad)


def test_coupled_propagators():
    c = Fraction(1, 2)
    assert moments.coupled_moment("[AB]", c) == NPolynomial({2: c / (1 - c * c)})
    assert moments.coupled_moment("[AA]", c) == NPolynomial({2: 1 / (1 - c * c)})
    with pytest.raises(InvalidCoupling):
        moments.coupled_moment("[AB]", 1)


def test_zero_coupling_factorizes():
    # at c = 0 the two matrices decouple, so single-label traces factor by label
    rng = random.Random(7)
    tried = 0
    while tried < 50:
        words = tuple(rng.choice("AB") * rng.randint(1, 4) for _ in range(rng.randint(1, 4)))
        mono = TraceMonomial(words)
        if mono.legs % 2 or mono.legs > 14:
            continue
        tried += 1
        a = [len(w) for w in words if w[0] == "A"]
        b = [len(w) for w in words if w[0] == "B"]
        ma = moments.moment(a) if a else NPolynomial({0: 1})
        mb = moments.moment(b) if b else NPolynomial({0: 1})
        assert moments.coupled_moment(mono, 0) == ma * mb


def test_link_coefficient_bounds():
    assert moments.link_coefficient([6], 2) == 10
    with pytest.raises(ValueError):
        moments.link_coefficient([2], 5)
