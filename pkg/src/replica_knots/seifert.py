"""Seifert matrices, Alexander and Conway polynomials.

All arithmetic is over the integers. The general determinant uses
fraction-free (Bareiss) elimination in ``Z[t]``; the bidiagonal family
has a three-term recursion that scales to large ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EvenParameter, NonSymmetrizable
from .polys import IntPolynomial, laurent_s_to_z


@dataclass(frozen=True)
class SeifertMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Seifert matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "SeifertMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def trivalent_family(g: int) -> SeifertMatrix:
    """``2g x 2g`` upper-bidiagonal matrix, diagonal ``(1, 2, ..., 2, 1)``."""
    if g < 1:
        raise ValueError("g must be >= 1")
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1 if i in (0, n - 1) else 2
        if i + 1 < n:
            rows[i][i + 1] = 1
    return SeifertMatrix.of(rows)


def _det(mat: list[list[IntPolynomial]]) -> IntPolynomial:
    """Bareiss elimination; every intermediate division is exact."""
    n = len(mat)
    if n == 0:
        return IntPolynomial((1,))
    a = [row[:] for row in mat]
    sign = 1
    prev = IntPolynomial((1,))
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return IntPolynomial(())
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def seifert_form(V: SeifertMatrix) -> list[list[IntPolynomial]]:
    """Entries of ``t V - V^T`` as integer polynomials in ``t``."""
    n = V.size
    return [
        [IntPolynomial((-V.rows[j][i], V.rows[i][j])) for j in range(n)] for i in range(n)
    ]


def alexander_polynomial(V: SeifertMatrix) -> IntPolynomial:
    """``det(t V - V^T)``, exact and unnormalized."""
    return _det(seifert_form(V))


def normalize(p: IntPolynomial) -> IntPolynomial:
    """Representative of ``p`` up to units ``+-t^k``: no factor of t, positive constant."""
    p = p.strip_low()
    if p.coeffs and p.coeffs[0] < 0:
        p = -p
    return p


def is_palindromic(p: IntPolynomial) -> bool:
    p = normalize(p)
    return p.coeffs == p.coeffs[::-1]


def alexander_trivalent_recursive(g: int) -> IntPolynomial:
    """Alexander polynomial of :func:`trivalent_family` by tridiagonal recursion.

    ``t V - V^T`` has diagonal ``(t-1) d_j``, superdiagonal ``t`` and
    subdiagonal ``-1``, so ``D_j = (t-1) d_j D_{j-1} + t D_{j-2}``.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    n = 2 * g
    tm1 = IntPolynomial((-1, 1))
    t = IntPolynomial.x()
    prev, cur = IntPolynomial((1,)), tm1
    for j in range(1, n):
        d = 1 if j == n - 1 else 2
        prev, cur = cur, cur * tm1 * d + prev * t
    return cur


def torus_2n_alexander(n: int) -> IntPolynomial:
    """``(t^n + 1)/(t + 1)`` for odd ``n``."""
    if n % 2 == 0:
        raise EvenParameter(f"n must be odd, got {n}")
    if n < 3:
        raise ValueError("n must be >= 3")
    return IntPolynomial([(-1) ** j for j in range(n)])


def conway_polynomial(V: SeifertMatrix) -> IntPolynomial:
    """``det(t^(1/2) V - t^(-1/2) V^T)`` rewritten in ``z = t^(1/2) - t^(-1/2)``."""
    n = V.size
    if n == 0:
        return IntPolynomial((1,), "z")
    det = alexander_polynomial(V)
    # t^k becomes s^(2k), and the prefactor t^(-n/2) shifts by s^(-n)
    terms = {2 * k - n: c for k, c in enumerate(det.coeffs) if c}
    try:
        return laurent_s_to_z(terms)
    except NonSymmetrizable as exc:
        raise NonSymmetrizable(f"determinant {det} is not a polynomial in z") from exc


def conway_to_alexander(conway: IntPolynomial) -> IntPolynomial:
    """Substitute ``z^2 = t - 2 + 1/t`` and clear the negative powers of ``t``."""
    if any(c for i, c in enumerate(conway.coeffs) if i % 2):
        raise NonSymmetrizable("odd powers of z do not give a polynomial in t")
    half = (conway.degree // 2) if conway.coeffs else 0
    z2 = IntPolynomial((1, -2, 1))  # t * z^2
    t = IntPolynomial.x()
    out = IntPolynomial(())
    for i in range(0, len(conway.coeffs), 2):
        c = conway.coeffs[i]
        if c:
            out = out + (z2 ** (i // 2)) * (t ** (half - i // 2)) * c
    return out


def knot_determinant(p: IntPolynomial) -> int:
    return abs(p(-1))
