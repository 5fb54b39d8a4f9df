"""Acceptance criteria 1 to 15, each at its stated tolerance and time budget.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed at the end of the session.
"""

import math
import random
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, prod

import numpy as np
import pytest

from replica_knots import bands, knotpoly, moments, seifert, series, zeros
from replica_knots.bands import OVER, UNDER, LadderDiagram, LadderSkeleton
from replica_knots.polys import IntPolynomial, NPolynomial


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        if exc[0] is None:
            elapsed = time.perf_counter() - self.t0
            assert elapsed < self.seconds, f"took {elapsed:.1f} s, budget {self.seconds} s"


def partitions_up_to(m):
    for k in range(1, m + 1):
        for parts in combinations_with_replacement(range(1, m + 1), k):
            if sum(parts) <= m:
                yield parts


def test_criterion_01_replica_33():
    """replica (tr M^3)^2 = 3"""
    with Budget(1):
        assert moments.replica_coefficient([3, 3]) == 3


def test_criterion_02_replica_55():
    """replica (tr M^5)^2 = 165 by 945 pairings and by the generating series"""
    moments.diagram_census([1, 1])  # compile the kernel outside the budget
    with Budget(1):
        assert sum(moments.diagram_census([5, 5]).values()) == 945
        assert moments.replica_coefficient([5, 5], "brute") == 165
        assert series.replica_moment_from_series([5, 5]) == 165


def test_criterion_03_selection_rule():
    """(tr M^3)^4 vanishes; (tr M^3)^6 = 3061800 over 34459425 pairings, equal to the g=2 closed form"""
    with Budget(300):
        assert moments.replica_coefficient([3, 3, 3, 3]) == 0
        census = moments.diagram_census([3] * 6)
        assert sum(census.values()) == 34459425
        assert census[1] == 3061800
        assert series.trivalent_closed_form(2) == 3061800


def test_criterion_04_degree16_coefficients():
    """all eight degree-16 three-trace series coefficients"""
    want = {
        (8, 4, 4): Fraction(11, 1152),
        (8, 5, 3): Fraction(11, 1440),
        (8, 6, 2): Fraction(47, 11520),
        (7, 7, 2): Fraction(53, 11520),
        (7, 6, 3): Fraction(347, 34560),
        (7, 5, 4): Fraction(89, 5760),
        (6, 6, 4): Fraction(623, 34560),
        (6, 5, 5): Fraction(511, 23040),
    }
    with Budget(10):
        series.replica_generating_series.cache_clear()
        s = series.replica_generating_series(3, 16)
        for e, c in want.items():
            assert s[e] == c


def test_criterion_05_oracle_equivalence():
    """loop equation = pairing enumeration for every monomial of degree <= 14; P(1) and parity on 200 random monomials"""
    with Budget(120):
        for parts in partitions_up_to(14):
            assert moments.moment(parts) == moments.moment(parts, "brute"), parts
        rng = random.Random(2024)
        done = 0
        while done < 200:
            parts = [rng.randint(1, 9) for _ in range(rng.randint(1, 5))]
            m = sum(parts)
            if m % 2 or m > 30:
                continue
            done += 1
            p = moments.moment(parts)
            assert p(1) == moments.double_factorial(m - 1)
            parity = (m // 2 + len(parts)) % 2
            assert all(e % 2 == parity for e in p.coeffs)


def test_criterion_06_onepoint():
    """one-point series 1, 1/24, 1/1920 and order-N terms 1/2, 1/72 from the N^2 moment coefficients"""
    with Budget(1):
        u = series.onepoint_series(8)
        assert (u[0], u[4], u[8]) == (1, Fraction(1, 24), Fraction(1, 1920))
        w = series.onepoint_orderN_series(6)
        assert w[2] == Fraction(1, 2) and w[6] == Fraction(1, 72)
        # the same numbers straight from the moments
        assert moments.link_coefficient([2], 2) / factorial(2) == Fraction(1, 2)
        assert moments.link_coefficient([6], 2) / factorial(6) == Fraction(1, 72)


def test_criterion_07_residue_expansion():
    """residue expansion summed over k reproduces <tr M^2j> for 2j <= 10"""
    with Budget(30):
        polys = series.onepoint_polynomials(10)
        N = NPolynomial({1: 1})
        for p in range(2, 11, 2):
            want = moments.moment([p], "brute").scale(Fraction(1, factorial(p)))
            assert polys[p] * N == want
        terms = series.onepoint_full_expansion(5, 12)
        for k in range(1, 6):
            assert terms[k][2 * k + 2] == Fraction(k, 12 * factorial(k + 1)) / factorial(k)


def test_criterion_08_intersection_numbers():
    """<tau_1>_1 = 1/24 and 1/(24^g g!) for g <= 5"""
    assert series.intersection_number(1) == Fraction(1, 24)
    for g in range(1, 6):
        assert series.intersection_number(g) == Fraction(1, 24**g * factorial(g))


def test_criterion_09_alexander():
    """Alexander g=1, g=2 with determinant 45; determinant route = recursion for g <= 20"""
    with Budget(10):
        assert seifert.alexander_polynomial(seifert.trivalent_family(1)) == IntPolynomial([1, -1, 1])
        a2 = seifert.alexander_polynomial(seifert.trivalent_family(2))
        assert a2 == IntPolynomial([4, -11, 15, -11, 4])
        assert abs(a2(-1)) == 45
        for g in range(1, 21):
            assert seifert.alexander_polynomial(seifert.trivalent_family(g)) == seifert.alexander_trivalent_recursive(g)


def test_criterion_10_zero_locus():
    """family zeros for g <= 30 on |t|=1 within 1e-10, Re in [1/2, 1), |arg| <= pi/3; edge and torus endpoints within 1e-12"""
    with Budget(60):
        for g in range(1, 31):
            rs = zeros.find_roots(seifert.alexander_trivalent_recursive(g))
            vals = rs.values
            assert np.max(np.abs(np.abs(vals) - 1)) < 1e-10
            assert np.min(vals.real) >= 0.5 - 1e-10 and np.max(vals.real) < 1
            assert np.max(np.abs(np.angle(vals))) <= math.pi / 3 + 1e-10
        g1 = zeros.find_roots(seifert.alexander_trivalent_recursive(1)).values
        for z in g1:
            assert abs(z.real - 0.5) < 1e-12 and abs(abs(z.imag) - math.sqrt(3) / 2) < 1e-12
        t5 = np.sort(np.angle(zeros.find_roots(seifert.torus_2n_alexander(5)).values))
        want = np.sort([-3 * math.pi / 5, -math.pi / 5, math.pi / 5, 3 * math.pi / 5])
        assert np.max(np.abs(t5 - want)) < 1e-12


def test_criterion_11_edge_behaviour():
    """pooled density to g=200 peaks next to pi/3, edge exponent in [-0.65, -0.35]; synthetic -1/2 recovered within 0.02"""
    with Budget(300):
        sets = list(zeros.family_sweep(range(1, 201)).values())
        hist = zeros.angular_density(sets)
        assert int(hist.counts.argmax()) == len(hist.counts) - 1
        fit = zeros.edge_exponent(sets)
        assert -0.65 <= fit.exponent <= -0.35
        synth = zeros.edge_exponent(zeros.synthetic_edge_sample(20000))
        assert abs(synth.exponent + 0.5) <= 0.02


def test_criterion_12_numbering():
    """trefoil 2121212 with equal row sums; flipped rows (8,4) reducible; 8-rung sequences; 2-strand census"""
    with Budget(10):
        cm = bands.crossing_matrix(bands.floor_numbering(LadderDiagram.from_word(2, [0] * 3, [UNDER] * 3)))
        assert str(bands.floor_numbering(LadderDiagram.from_word(2, [0] * 3, [UNDER] * 3))) == "2121212"
        assert cm.rows == ((2, 1, 2, 1), (1, 2, 1, 2)) and cm.row_sums == (6, 6)
        flipped = bands.crossing_matrix(
            bands.floor_numbering(LadderDiagram.from_word(2, [0] * 3, [OVER, OVER, UNDER]))
        )
        assert flipped.row_sums == (8, 4) and flipped.verdict == bands.UNKNOT_REDUCIBLE
        sk = (1, 0, 1, 0, 1, 1, 0, 0)
        alt = bands.floor_numbering(LadderDiagram.from_word(3, sk, bands.alternating_signs(sk)))
        assert "".join(map(str, alt.open_form)) == "1212121212121212"
        non_alt = bands.floor_numbering(LadderDiagram.from_word(3, sk, [UNDER] * 8), start_strand=3)
        assert "".join(map(str, non_alt.open_form)) == "1232123212323212"
        c3 = bands.enumerate_assignments(LadderSkeleton(2, (0, 0, 0)))
        knots = [r for r in c3.records if r.verdict == bands.KNOT_CANDIDATE]
        assert len(knots) == 2 and {r.signs for r in knots} == {(OVER,) * 3, (UNDER,) * 3}
        c2 = bands.enumerate_assignments(LadderSkeleton(2, (0, 0)))
        assert c2.counts[bands.KNOT_CANDIDATE] == 0
        assert sum(1 for r in c2.records if r.components == 2 and r.linked) == 2


def test_criterion_13_knot_polynomials():
    """v2(5_2) = -6, Conway(5_2) = 1+2z^2, v2 = -3 a2, skein residual 0, trivial links mu <= 4"""
    with Budget(10):
        v52 = knotpoly.jones_polynomial(knotpoly.fixture("5_2"))
        assert knotpoly.vassiliev_coefficients(v52, 2)[2] == -6
        assert seifert.conway_polynomial(seifert.SeifertMatrix.of([[1, 1], [0, 2]])) == IntPolynomial([1, 0, 2], "z")
        for name in ("3_1", "4_1", "5_1", "5_2"):
            d = knotpoly.fixture(name)
            v2 = knotpoly.vassiliev_coefficients(knotpoly.jones_polynomial(d), 2)[2]
            a2 = knotpoly.conway_from_alexander(knotpoly.alexander_from_pd(d)).coeffs[2]
            assert v2 == -3 * a2
        trefoil, unknot, hopf = (knotpoly.pd_from_braid(w, 2) for w in ([1, 1, 1], [1, 1, -1], [1, 1]))
        assert knotpoly.jones_polynomial(unknot) == knotpoly.trivial_link_jones(1)
        assert knotpoly.skein_check(trefoil, unknot, hopf).residual.is_zero
        for mu in range(1, 5):
            got = knotpoly.jones_polynomial(knotpoly.PlanarDiagram.trivial_link(mu))
            assert got == knotpoly.trivial_link_jones(mu)


def test_criterion_14_coupled_moments():
    """<tr M1 M2> = N^2 c/(1-c^2) at c = 1/2; c = 0 factorization on 50 random two-label monomials"""
    with Budget(30):
        c = Fraction(1, 2)
        assert moments.coupled_moment("[AB]", c) == NPolynomial({2: c / (1 - c * c)})
        rng = random.Random(99)
        done = 0
        while done < 50:
            words = tuple(rng.choice("AB") * rng.randint(1, 4) for _ in range(rng.randint(2, 4)))
            mono = moments.TraceMonomial(words)
            if mono.legs % 2 or mono.legs > 14 or len({w[0] for w in words}) < 2:
                continue
            done += 1
            a = [len(w) for w in words if w[0] == "A"]
            b = [len(w) for w in words if w[0] == "B"]
            assert moments.coupled_moment(mono, 0) == moments.moment(a) * moments.moment(b)


def test_criterion_15_bernoulli():
    """b2 = 1/48, |b4| = 1/5760, |b_2n| = |B_2n|/(4n (2n)!) for n <= 8; Bessel limit within 1e-3 at N=200"""
    with Budget(30):
        b = series.oneloop_bernoulli_coeffs(8)
        assert b[1] == Fraction(1, 48) and abs(b[2]) == Fraction(1, 5760)
        bern = series.bernoulli_numbers(16)
        for n in range(1, 9):
            assert abs(b[n]) == abs(bern[2 * n]) / (4 * n * factorial(2 * n))
        assert series.bessel_largeN_check(200) < 1e-3


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
