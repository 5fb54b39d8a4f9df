"""Replica generating functions as exact truncated power series.

The central object is the N -> 0 limit of
``U(s_1..s_k) = <prod_i tr exp(s_i M)> / N``, which has the closed form
``(2^k / chi^2) prod_i sinh(chi s_i / 2)`` with ``chi = s_1 + ... + s_k``.
Everything here is exact rational arithmetic except the large-N Bessel
comparison, which is a floating-point convergence check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, prod
from typing import Iterator, Mapping, Sequence

import numpy as np

from .moments import TraceMonomial, link_coefficient, single_trace_moment
from .polys import NPolynomial

DEFAULT_DEGREE = 16


@dataclass(frozen=True)
class MultiSeries:
    """Truncated series in ``nvars`` variables, total degree <= ``degree``."""

    nvars: int
    degree: int
    coeffs: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.coeffs.items():
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has wrong length")
            if sum(e) > self.degree:
                raise ValueError(f"exponent {e} exceeds truncation degree {self.degree}")
            if c:
                clean[tuple(e)] = Fraction(c)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), reverse=True)))

    def __getitem__(self, exps: Sequence[int]) -> Fraction:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents")
        if sum(exps) > self.degree:
            raise ValueError("requested coefficient lies beyond the truncation degree")
        return self.coeffs.get(exps, Fraction(0))

    def items(self):
        return self.coeffs.items()

    def homogeneous(self, total: int) -> dict[tuple[int, ...], Fraction]:
        return {e: c for e, c in self.coeffs.items() if sum(e) == total}

    def permuted(self, perm: Sequence[int]) -> "MultiSeries":
        return MultiSeries(
            self.nvars, self.degree, {tuple(e[p] for p in perm): c for e, c in self.coeffs.items()}
        )

    def is_symmetric(self) -> bool:
        return all(self.permuted(p).coeffs == self.coeffs for p in permutations(range(self.nvars)))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _odd_vectors(k: int, max_sum: int) -> Iterator[tuple[int, ...]]:
    """Vectors of odd positive integers of length ``k`` with sum <= ``max_sum``."""
    if k == 0:
        yield ()
        return
    for a in range(1, max_sum - (k - 1) + 1, 2):
        for rest in _odd_vectors(k - 1, max_sum - a):
            yield (a, *rest)


def _multinomial(n: int, parts: Sequence[int]) -> int:
    out, left = 1, n
    for p in parts:
        out *= comb(left, p)
        left -= p
    return out


def _divide_by_sum(poly: dict[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    """Exact division by ``s_1 + ... + s_k``; the remainder must vanish."""
    rem = dict(poly)
    quot: dict[tuple[int, ...], Fraction] = {}
    k = len(next(iter(rem))) if rem else 0
    while rem:
        lead = max(rem)
        c = rem[lead]
        if lead[0] == 0:
            raise ArithmeticError(f"series not divisible by chi: leftover term {lead}")
        q = (lead[0] - 1, *lead[1:])
        quot[q] = quot.get(q, 0) + c
        for i in range(k):
            e = list(q)
            e[i] += 1
            e = tuple(e)
            v = rem.get(e, 0) - c
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return quot


@lru_cache(maxsize=None)
def replica_generating_series(k: int, degree: int = DEFAULT_DEGREE) -> MultiSeries:
    """Expand ``(2^k/chi^2) prod sinh(chi s_i / 2)`` through total ``degree``."""
    if k < 1 or degree < k:
        raise ValueError("need k >= 1 and degree >= k")
    # a term with odd powers a_i of the sinh arguments has total degree 2|a| - 2
    numerator: dict[tuple[int, ...], Fraction] = {}
    for a in _odd_vectors(k, (degree + 2) // 2):
        s = sum(a)
        weight = Fraction(2**k, prod(2**ai * factorial(ai) for ai in a))
        for b in _compositions(s, k):
            e = tuple(x + y for x, y in zip(a, b))
            numerator[e] = numerator.get(e, 0) + weight * _multinomial(s, b)
    quotient = _divide_by_sum(_divide_by_sum(numerator))
    return MultiSeries(k, degree, quotient)


def replica_moment_from_series(spec, series: MultiSeries | None = None) -> Fraction:
    """Replica coefficient read off the generating series."""
    mono = spec if isinstance(spec, TraceMonomial) else TraceMonomial.from_powers(spec)
    powers = mono.powers
    total = sum(powers)
    if total % 2:
        return Fraction(0)
    if series is None:
        series = replica_generating_series(len(powers), max(total, len(powers)))
    return series[powers] * prod(factorial(n) for n in powers)


def trivalent_closed_form(g: int) -> Fraction:
    """Replica coefficient of ``(tr M^3)^(4g-2)``."""
    if g < 1:
        raise ValueError("g must be >= 1")
    num = 3 ** (3 * g - 2) * factorial(6 * g - 4) * factorial(4 * g - 2)
    return Fraction(num, 2 ** (2 * g) * factorial(g) * factorial(3 * g - 2))


def trivalent_selection(n_traces: int) -> Fraction:
    """Replica coefficient of ``(tr M^3)^n``; zero unless ``n = 2 (mod 4)``."""
    if n_traces % 4 != 2:
        return Fraction(0)
    return trivalent_closed_form((n_traces + 2) // 4)


def intersection_number(g: int) -> Fraction:
    """One-point intersection number ``<tau_{3g-2}>_g = 1/(24^g g!)``."""
    if g < 1:
        raise ValueError("g must be >= 1")
    return Fraction(1, 24**g * factorial(g))


def marked_point_index(g: int) -> int:
    return 3 * g - 2


def onepoint_series(degree: int) -> list[Fraction]:
    """Coefficients of ``sinh(s^2/2)/(s^2/2)`` for powers ``0..degree``."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    out = [Fraction(0)] * (degree + 1)
    for p in range(0, degree + 1, 4):
        j = p // 4
        out[p] = Fraction(1, 4**j * factorial(2 * j + 1))
    return out


def onepoint_orderN_series(degree: int) -> list[Fraction]:
    """Order-N part of the one-point function, from two-stroke Wick counts."""
    if degree < 2:
        raise ValueError("degree must be >= 2")
    out = [Fraction(0)] * (degree + 1)
    for p in range(2, degree + 1, 2):
        out[p] = link_coefficient([p], 2) / factorial(p)
    return out


def _series_mul(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def onepoint_full_expansion(kmax: int, degree: int) -> dict[int, list[Fraction]]:
    """Residue expansion of the k-th logarithmic term of the one-point function.

    Term ``k`` is ``(1/s) oint e^{su} [log((1+s/2u)/(1-s/2u))]^k / k!``;
    the full function is ``sum_k N^(k-1) * term_k``. Returned lists hold the
    coefficients of ``s^0..s^degree``.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    nmax = degree // 2 + 1
    # 2 artanh(x/2) with x = s/u
    log_term = [Fraction(0)] * (nmax + 1)
    for r in range(1, nmax + 1, 2):
        log_term[r] = Fraction(2, 2**r * r)
    power = [Fraction(1)] + [Fraction(0)] * nmax
    out = {}
    for k in range(1, kmax + 1):
        power = _series_mul(power, log_term, nmax)
        coeffs = [Fraction(0)] * (degree + 1)
        for n in range(k, nmax + 1):
            # residue of e^{su} u^{-n} at u = 0 is s^(n-1)/(n-1)!
            p = 2 * n - 2
            if p <= degree and power[n]:
                coeffs[p] = power[n] / (factorial(n - 1) * factorial(k))
        out[k] = coeffs
    return out


def onepoint_polynomials(degree: int) -> dict[int, NPolynomial]:
    """Reassemble ``sum_k N^(k-1) term_k`` into a polynomial in N per power of s."""
    expansion = onepoint_full_expansion(degree // 2 + 1, degree)
    out = {}
    for p in range(0, degree + 1, 2):
        out[p] = NPolynomial({k - 1: terms[p] for k, terms in expansion.items()})
    return out


def bessel_largeN_check(
    n: int, tmax: float = 2.0, samples: int = 201, jmax: int = 40
) -> float:
    """Sup-norm gap between the scaled one-point function and ``J1(2t)/t``.

    The moments ``<tr M^(2j)>`` are exact; the series is summed in floating
    point at ``s^2 = -t^2 / N``.
    """
    from scipy.special import j1

    coeffs = []
    for j in range(jmax + 1):
        exact = single_trace_moment(j)(n) / (Fraction(n) ** (j + 1) * factorial(2 * j))
        coeffs.append(float(exact))
    t = np.linspace(0.0, tmax, samples)
    x = -(t**2)
    approx = np.polynomial.polynomial.polyval(x, coeffs)
    safe = np.where(t == 0, 1.0, t)
    target = np.where(t == 0, 1.0, j1(2 * safe) / safe)
    return float(np.max(np.abs(approx - target)))


def bernoulli_numbers(nmax: int) -> list[Fraction]:
    """``B_0..B_nmax`` with ``B_1 = -1/2``."""
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return b


def oneloop_bernoulli_coeffs(nmax: int) -> list[Fraction]:
    """Coefficients ``b_{2n}``, ``n = 0..nmax``, of ``(1/2) log(sinh(x/2)/(x/2))``."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    deg = 2 * nmax
    f = [Fraction(0)] * (deg + 1)
    for j in range(0, deg + 1, 2):
        f[j] = Fraction(1, 2**j * factorial(j + 1))
    # log of a series with unit constant term, via h' = f'/f
    h = [Fraction(0)] * (deg + 1)
    for n in range(1, deg + 1):
        h[n] = f[n] - Fraction(sum(k * h[k] * f[n - k] for k in range(1, n)), n)
    return [h[2 * n] / 2 for n in range(nmax + 1)]
