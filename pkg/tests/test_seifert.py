import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from replica_knots import seifert
from replica_knots.errors import EvenParameter, NonSymmetrizable
from replica_knots.polys import IntPolynomial
from replica_knots.seifert import SeifertMatrix

T = sympy.symbols("t")


def _sympy_alexander(V: SeifertMatrix) -> IntPolynomial:
    M = sympy.Matrix(V.rows)
    det = sympy.expand((T * M - M.T).det()) if V.size else sympy.Integer(1)
    return IntPolynomial([int(c) for c in reversed(sympy.Poly(det, T).all_coeffs())])


@st.composite
def knot_seifert_matrices(draw):
    # symmetric part plus a standard symplectic part keeps V - V^T unimodular
    g = draw(st.integers(1, 3))
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = draw(st.integers(-2, 2))
            rows[i][j] = rows[j][i] = v
    for b in range(g):
        rows[2 * b][2 * b + 1] += 1
    return SeifertMatrix.of(rows)


def test_family_low_genus():
    assert seifert.alexander_polynomial(seifert.trivalent_family(1)) == IntPolynomial([1, -1, 1])
    a2 = seifert.alexander_polynomial(seifert.trivalent_family(2))
    assert a2 == IntPolynomial([4, -11, 15, -11, 4])
    assert seifert.knot_determinant(a2) == 45


@pytest.mark.parametrize("g", range(1, 13))
def test_routes_agree(g):
    det = seifert.alexander_polynomial(seifert.trivalent_family(g))
    assert det == seifert.alexander_trivalent_recursive(g)
    assert seifert.is_palindromic(det)
    assert det(1) == 1
    # every member carries the trefoil factor
    det.exact_div(IntPolynomial([1, -1, 1]))


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_family_against_sympy(g):
    V = seifert.trivalent_family(g)
    assert seifert.alexander_polynomial(V) == _sympy_alexander(V)


@given(knot_seifert_matrices())
def test_alexander_against_sympy(V):
    assert seifert.alexander_polynomial(V) == _sympy_alexander(V)


@given(knot_seifert_matrices())
def test_knot_invariants(V):
    delta = seifert.normalize(seifert.alexander_polynomial(V))
    if delta.is_zero:
        return
    assert seifert.is_palindromic(delta)
    assert abs(delta(1)) == 1
    conway = seifert.conway_polynomial(V)
    assert conway.coeffs[0] == 1
    assert seifert.normalize(seifert.conway_to_alexander(conway)) == delta


def test_five_two_fixture():
    V = SeifertMatrix.of([[1, 1], [0, 2]])
    assert seifert.alexander_polynomial(V) == IntPolynomial([2, -3, 2])
    assert seifert.conway_polynomial(V) == IntPolynomial([1, 0, 2], "z")


def test_degenerate_matrices():
    assert seifert.conway_polynomial(SeifertMatrix.of([])) == IntPolynomial([1], "z")
    assert seifert.alexander_polynomial(SeifertMatrix.of([[0]])).is_zero
    with pytest.raises(ValueError):
        SeifertMatrix.of([[1, 2]])


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_torus(n):
    p = seifert.torus_2n_alexander(n)
    assert p * IntPolynomial([1, 1]) == IntPolynomial([1] + [0] * (n - 1) + [1])


def test_torus_even():
    with pytest.raises(EvenParameter):
        seifert.torus_2n_alexander(4)


def test_conway_odd_powers_rejected():
    with pytest.raises(NonSymmetrizable):
        seifert.conway_to_alexander(IntPolynomial([1, 1], "z"))
