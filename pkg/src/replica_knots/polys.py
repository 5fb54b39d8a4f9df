"""Small exact polynomial types used throughout the package.

Three flavours are enough here:

* :class:`NPolynomial` -- polynomial in the matrix size ``N`` with rational
  coefficients (Gaussian moments).
* :class:`IntPolynomial` -- dense univariate integer polynomial (Alexander,
  Conway).
* :class:`LaurentPoly` -- sparse integer Laurent polynomial (Kauffman bracket,
  Jones).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .errors import NonSymmetrizable


def _fmt_term(coef, power: int, var: str, first: bool) -> str:
    sign = "-" if coef < 0 else ("" if first else "+")
    mag = -coef if coef < 0 else coef
    if power == 0:
        body = str(mag)
    else:
        base = var if power == 1 else f"{var}^{power}"
        body = base if mag == 1 else f"{mag}*{base}"
    if first:
        return f"{sign}{body}"
    return f" {sign or '+'} {body}"


@dataclass(frozen=True)
class NPolynomial:
    """Exact polynomial in ``N`` stored as ``{exponent: Fraction}`` without zeros."""

    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.coeffs.items():
            c = Fraction(c)
            if e < 0:
                raise ValueError("negative exponent in NPolynomial")
            if c:
                clean[int(e)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def constant(cls, c) -> "NPolynomial":
        return cls({0: Fraction(c)})

    @classmethod
    def monomial(cls, exponent: int, c=1) -> "NPolynomial":
        return cls({exponent: Fraction(c)})

    def coefficient(self, exponent: int) -> Fraction:
        return self.coeffs.get(exponent, Fraction(0))

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, n):
        return sum((c * n**e for e, c in self.coeffs.items()), Fraction(0))

    def __add__(self, other: "NPolynomial") -> "NPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return NPolynomial(out)

    def __sub__(self, other: "NPolynomial") -> "NPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, NPolynomial):
            return self.scale(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return NPolynomial(out)

    __rmul__ = __mul__

    def scale(self, c) -> "NPolynomial":
        return NPolynomial({e: v * c for e, v in self.coeffs.items()})

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in self.coeffs.items()}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), reverse=True)
        return "".join(_fmt_term(c, e, "N", i == 0) for i, (e, c) in enumerate(items))


class IntPolynomial:
    """Dense integer polynomial, coefficients stored low degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[int] = (), var: str = "t"):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self.var = var

    @classmethod
    def from_high(cls, coeffs: Iterable[int], var: str = "t") -> "IntPolynomial":
        """Build from coefficients listed highest degree first."""
        return cls(list(coeffs)[::-1], var)

    @classmethod
    def x(cls, var: str = "t") -> "IntPolynomial":
        return cls((0, 1), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def high_first(self) -> list[int]:
        return list(self.coeffs[::-1])

    def lowest_power(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _lift(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        return IntPolynomial((other,), self.var)

    def __add__(self, other) -> "IntPolynomial":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,), self.var)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dl = other.coeffs[-1]
        dd = other.degree
        q = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % dl:
                raise ArithmeticError("inexact polynomial division")
            f = c // dl
            q[k - dd] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dd + j] -= f * b
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial(q, self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def reversed(self) -> "IntPolynomial":
        """Coefficient reversal, i.e. ``t^deg * p(1/t)``."""
        return IntPolynomial(self.coeffs[::-1], self.var)

    def strip_low(self) -> "IntPolynomial":
        """Divide out the largest power of the variable."""
        return IntPolynomial(self.coeffs[self.lowest_power():], self.var)

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        items = [(i, c) for i, c in enumerate(self.coeffs) if c][::-1]
        if not items:
            return "0"
        return "".join(_fmt_term(c, e, self.var, k == 0) for k, (e, c) in enumerate(items))


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse integer Laurent polynomial ``{exponent: coefficient}``.

    The exponent unit is whatever the caller says it is; Jones polynomials
    are stored in powers of ``t^(1/2)`` (``var="s"``) so links with
    half-integer exponents stay on an integer lattice.
    """

    terms: Mapping[int, int] = field(default_factory=dict)
    var: str = "A"

    def __post_init__(self):
        clean = {int(e): int(c) for e, c in self.terms.items() if c}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def one(cls, var: str = "A") -> "LaurentPoly":
        return cls({0: 1}, var)

    @classmethod
    def mono(cls, exponent: int, coef: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exponent: coef}, var)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.var)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        out = LaurentPoly.one(self.var)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()}, self.var)

    def substitute_power(self, k: int, var: str) -> "LaurentPoly":
        """Replace the variable ``x`` by ``y**k`` (``k`` may be negative)."""
        return LaurentPoly({e * k: c for e, c in self.terms.items()}, var)

    def rescale_exponents(self, d: int, var: str) -> "LaurentPoly":
        """Divide every exponent by ``d``; each must be a multiple of ``d``."""
        if any(e % d for e in self.terms):
            raise ValueError(f"exponents not divisible by {d}")
        return LaurentPoly({e // d: c for e, c in self.terms.items()}, var)

    def __call__(self, x):
        return sum(c * x**e for e, c in self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), reverse=True)
        return "".join(_fmt_term(c, e, self.var, i == 0) for i, (e, c) in enumerate(items))


def z_power_in_s(d: int) -> dict[int, int]:
    """Expansion of ``(s - 1/s)**d`` as ``{exponent of s: coefficient}``."""
    return {d - 2 * i: comb(d, i) * (-1) ** i for i in range(d + 1)}


def laurent_s_to_z(terms: Mapping[int, int]) -> IntPolynomial:
    """Rewrite a Laurent polynomial in ``s`` as a polynomial in ``z = s - 1/s``.

    Raises :class:`NonSymmetrizable` when no such polynomial exists.
    """
    rem = {e: c for e, c in terms.items() if c}
    out: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < 0:
            raise NonSymmetrizable(f"leftover terms {rem} after peeling")
        c = rem[top]
        out[top] = c
        for e, b in z_power_in_s(top).items():
            v = rem.get(e, 0) - c * b
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    n = max(out, default=-1) + 1
    return IntPolynomial([out.get(i, 0) for i in range(n)], "z")
