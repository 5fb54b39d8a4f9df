import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from replica_knots import bands, knotpoly, seifert
from replica_knots.errors import CapExceeded, MalformedDiagram, UnknownKnot
from replica_knots.knotpoly import PlanarDiagram
from replica_knots.polys import IntPolynomial, LaurentPoly

KNOTS = ["3_1", "3_1_mirror", "4_1", "5_1", "5_2"]


def s_poly(terms_in_t):
    """Build a polynomial in s = t^(1/2) from {t-exponent: coefficient}."""
    return LaurentPoly({int(2 * Fraction(e)): c for e, c in terms_in_t.items()}, "s")


def jones_of_braid(word, strands):
    return knotpoly.jones_polynomial(knotpoly.pd_from_braid(word, strands))


braid_words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=7)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("3_1", {-1: 1, -3: 1, -4: -1}),
        ("3_1_mirror", {1: 1, 3: 1, 4: -1}),
        ("4_1", {2: 1, 1: -1, 0: 1, -1: -1, -2: 1}),
        ("5_1", {-2: 1, -4: 1, -5: -1, -6: 1, -7: -1}),
        ("5_2", {-1: 1, -2: -1, -3: 2, -4: -1, -5: 1, -6: -1}),
        ("hopf", {"-1/2": -1, "-5/2": -1}),
        ("unknot", {0: 1}),
    ],
)
def test_fixture_jones(name, expected):
    assert knotpoly.jones_polynomial(knotpoly.fixture(name)) == s_poly(expected)


def test_writhes_and_signs():
    assert knotpoly.writhe(knotpoly.fixture("3_1")) == -3
    assert knotpoly.writhe(knotpoly.fixture("4_1")) == 0
    assert knotpoly.fixture("hopf").signs() == (-1, -1)


@pytest.mark.parametrize("mu", [1, 2, 3, 4])
def test_trivial_links(mu):
    v = knotpoly.jones_polynomial(PlanarDiagram.trivial_link(mu))
    assert v == knotpoly.trivial_link_jones(mu)
    assert v(1) == (-2) ** (mu - 1)


@pytest.mark.parametrize("name", KNOTS)
def test_knot_evaluations(name):
    v = knotpoly.jones_polynomial(knotpoly.fixture(name))
    assert v(1) == 1
    # V(e^{2 pi i / 3}) = 1 for every knot
    assert abs(v(cmath.exp(1j * cmath.pi / 3)) - 1) < 1e-12


@pytest.mark.parametrize("name", KNOTS + ["hopf"])
def test_skein_at_every_crossing(name):
    d = knotpoly.fixture(name)
    for k in range(d.n_crossings):
        res = knotpoly.skein_check(*knotpoly.skein_triple(d, k))
        assert res.holds and res.residual.is_zero


def test_skein_trefoil_unknot_hopf():
    plus = knotpoly.pd_from_braid([1, 1, 1], 2)
    minus = knotpoly.pd_from_braid([1, 1, -1], 2)
    zero = knotpoly.pd_from_braid([1, 1], 2)
    assert knotpoly.skein_check(plus, minus, zero).residual.is_zero


@pytest.mark.parametrize("name", KNOTS)
def test_mirror_inverts(name):
    d = knotpoly.fixture(name)
    v, m = knotpoly.jones_polynomial(d), knotpoly.jones_polynomial(knotpoly.mirror(d))
    assert m == LaurentPoly({-e: c for e, c in v.terms.items()}, "s")


@pytest.mark.parametrize("name", KNOTS)
@pytest.mark.parametrize("chunks", [2, 3, 8])
def test_chunked_state_sum(name, chunks):
    d = knotpoly.fixture(name)
    assert knotpoly.kauffman_bracket(d, chunks=chunks) == knotpoly.kauffman_bracket(d)


def test_parallel_state_sum():
    d = knotpoly.fixture("5_2")
    assert knotpoly.kauffman_bracket(d, chunks=4, workers=2) == knotpoly.kauffman_bracket(d)


def test_crossing_cap():
    with pytest.raises(CapExceeded):
        knotpoly.jones_polynomial(knotpoly.fixture("5_2"), cap=4)


@given(braid_words, st.integers(0, 7), st.sampled_from([1, 2]))
def test_reidemeister_two(word, at, gen):
    at = at % (len(word) + 1)
    longer = word[:at] + [gen, -gen] + word[at:]
    assert jones_of_braid(word, 3) == jones_of_braid(longer, 3)


@given(braid_words, st.integers(0, 7))
def test_reidemeister_three(word, at):
    at = at % (len(word) + 1)
    a = word[:at] + [1, 2, 1] + word[at:]
    b = word[:at] + [2, 1, 2] + word[at:]
    assert jones_of_braid(a, 3) == jones_of_braid(b, 3)


@given(braid_words)
def test_conjugation_and_stabilization(word):
    v = jones_of_braid(word, 3)
    assert jones_of_braid(word[1:] + word[:1], 3) == v
    # Markov stabilization adds a kink on a new strand
    assert jones_of_braid(word + [3], 4) == v
    assert jones_of_braid(word + [-3], 4) == v


@given(braid_words)
def test_jones_at_one_counts_components(word):
    d = knotpoly.pd_from_braid(word, 3)
    assert jones_of_braid(word, 3)(1) == (-2) ** (d.component_count() - 1)


@pytest.mark.parametrize(
    "name, delta", [("3_1", [1, -1, 1]), ("4_1", [1, -3, 1]), ("5_1", [1, -1, 1, -1, 1]), ("5_2", [2, -3, 2])]
)
def test_alexander_from_pd(name, delta):
    assert knotpoly.alexander_from_pd(knotpoly.fixture(name)) == IntPolynomial(delta)


@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=9).filter(lambda w: len(w) % 2 == 1))
def test_alexander_pd_route_matches_seifert_route(word):
    d = bands.LadderDiagram.from_braid(word, 2)
    via_seifert = seifert.normalize(seifert.alexander_polynomial(bands.seifert_matrix_from_ladder(d)))
    via_pd = seifert.normalize(knotpoly.alexander_from_pd(knotpoly.pd_from_braid(word, 2)))
    assert via_pd == via_seifert


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_1", "5_2"])
def test_second_vassiliev_against_conway(name):
    d = knotpoly.fixture(name)
    v = knotpoly.vassiliev_coefficients(knotpoly.jones_polynomial(d), 3)
    a2 = knotpoly.conway_from_alexander(knotpoly.alexander_from_pd(d)).coeffs[2]
    assert v[0] == 1 and v[1] == 0
    assert v[2] == -3 * a2


def test_five_two_invariants():
    d = knotpoly.fixture("5_2")
    assert knotpoly.vassiliev_coefficients(knotpoly.jones_polynomial(d), 2)[2] == -6
    assert knotpoly.conway_from_alexander(knotpoly.alexander_from_pd(d)) == IntPolynomial([1, 0, 2], "z")


def test_braid_closures():
    assert jones_of_braid([1, -2, 1, -2], 3) == knotpoly.jones_polynomial(knotpoly.fixture("4_1"))
    assert jones_of_braid([1, 1, 1], 2) == knotpoly.jones_polynomial(knotpoly.fixture("3_1_mirror"))


def test_pd_validation():
    with pytest.raises(MalformedDiagram):
        PlanarDiagram(((1, 2, 3, 4),))
    with pytest.raises(MalformedDiagram):
        PlanarDiagram.from_json({"pd": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], "signs": [1, 1, 1]})
    with pytest.raises(UnknownKnot):
        knotpoly.fixture("10_161")


def test_pd_json_round_trip():
    for name in knotpoly.fixture_names():
        d = knotpoly.fixture(name)
        assert PlanarDiagram.from_json(d.to_json()) == d


def test_format():
    assert knotpoly.format_jones(knotpoly.jones_polynomial(knotpoly.fixture("3_1"))) == "t^-1 + t^-3 - t^-4"
