"""Exact Gaussian Hermitian multi-trace moments.

Moments ``<prod_i tr W_i>`` under the weight ``exp(-tr M^2 / 2)`` are
computed as exact polynomials in the matrix size ``N``. Two independent
routes are provided for single-matrix monomials:

* brute force over all ``(m-1)!!`` Wick pairings (compiled kernel), and
* the split/merge loop equation, memoised on sorted trace multisets.

Legs are numbered consecutively trace by trace. The trace permutation
``gamma`` sends each leg to the next leg of its trace, and a pairing
``alpha`` contributes ``N ** cycles(gamma o alpha)``.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceeded, InvalidCoupling
from .polys import NPolynomial

DEFAULT_PAIRING_BUDGET = 40_000_000
DEFAULT_MAX_LEGS = 18
DEFAULT_MEMO_BUDGET = 2_000_000

LABELS = "AB"


def double_factorial(n: int) -> int:
    return reduce(lambda a, b: a * b, range(n, 0, -2), 1)


@dataclass(frozen=True)
class TraceMonomial:
    """A product of traces; each trace is a word over the labels ``A``, ``B``.

    Single-matrix monomials use only ``A`` and are usually built with
    :meth:`from_powers`.
    """

    words: tuple[str, ...]

    def __post_init__(self):
        words = tuple(self.words)
        if not words:
            raise ValueError("a trace monomial needs at least one trace")
        for w in words:
            if not w or any(ch not in LABELS for ch in w):
                raise ValueError(f"invalid trace word {w!r}")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_powers(cls, powers: Sequence[int]) -> "TraceMonomial":
        powers = list(powers)
        if any(int(n) < 1 for n in powers):
            raise ValueError("trace powers must be >= 1")
        return cls(tuple("A" * int(n) for n in powers))

    @classmethod
    def parse(cls, text: str) -> "TraceMonomial":
        """Parse ``"3,3"`` or ``"[AB],[AA]"`` (a bare ``n`` means ``A^n``)."""
        words = []
        for tok in (t.strip() for t in text.split(",")):
            if not tok:
                raise ValueError(f"empty trace in {text!r}")
            m = re.fullmatch(r"\[([AB]+)\]", tok)
            if m:
                words.append(m.group(1))
            elif tok.isdigit() and int(tok) >= 1:
                words.append("A" * int(tok))
            else:
                raise ValueError(f"cannot parse trace {tok!r}")
        return cls(tuple(words))

    @property
    def is_single_matrix(self) -> bool:
        return all(set(w) == {"A"} for w in self.words)

    @property
    def powers(self) -> tuple[int, ...]:
        if not self.is_single_matrix:
            raise ValueError("powers are only defined for single-matrix monomials")
        return tuple(len(w) for w in self.words)

    @property
    def legs(self) -> int:
        return sum(len(w) for w in self.words)

    @property
    def n_traces(self) -> int:
        return len(self.words)

    def restrict(self, label: str) -> "TraceMonomial | None":
        """Sub-monomial of the traces written purely in ``label``."""
        words = tuple(w for w in self.words if set(w) == {label})
        return TraceMonomial(words) if words else None

    def gamma(self) -> np.ndarray:
        out, offset = [], 0
        for w in self.words:
            n = len(w)
            out.extend(offset + (k + 1) % n for k in range(n))
            offset += n
        return np.array(out, dtype=np.int64)

    def label_array(self) -> np.ndarray:
        return np.array([LABELS.index(ch) for w in self.words for ch in w], dtype=np.int64)

    def __str__(self) -> str:
        if self.is_single_matrix:
            return ",".join(str(n) for n in self.powers)
        return ",".join(f"[{w}]" for w in self.words)


def _as_monomial(spec) -> TraceMonomial:
    if isinstance(spec, TraceMonomial):
        return spec
    if isinstance(spec, str):
        return TraceMonomial.parse(spec)
    return TraceMonomial.from_powers(spec)


@dataclass(frozen=True)
class PairingDiagram:
    """A Wick pairing of the legs together with the trace permutation."""

    partner: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        if len(p) != len(self.gamma) or len(p) % 2:
            raise ValueError("pairing and trace permutation sizes disagree")
        for i, j in enumerate(p):
            if j == i or p[j] != i:
                raise ValueError("pairing must be a fixed-point-free involution")

    @property
    def loops(self) -> int:
        seen = [False] * len(self.partner)
        count = 0
        for x in range(len(self.partner)):
            if not seen[x]:
                count += 1
                y = x
                while not seen[y]:
                    seen[y] = True
                    y = self.gamma[self.partner[y]]
        return count

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]


def iter_pairings(m: int) -> Iterator[tuple[int, ...]]:
    """All fixed-point-free involutions of ``range(m)`` as partner tuples."""
    partner = [-1] * m

    def rec():
        try:
            i = partner.index(-1)
        except ValueError:
            yield tuple(partner)
            return
        for j in range(i + 1, m):
            if partner[j] == -1:
                partner[i], partner[j] = j, i
                yield from rec()
                partner[i] = partner[j] = -1

    if m % 2 == 0:
        yield from rec()


def pairing_diagrams(spec) -> Iterator[PairingDiagram]:
    """Pure-Python enumeration of every pairing diagram of a monomial."""
    mono = _as_monomial(spec)
    gamma = tuple(int(x) for x in mono.gamma())
    for partner in iter_pairings(mono.legs):
        yield PairingDiagram(partner, gamma)


def _check_budget(m: int, budget: int, max_legs: int) -> None:
    if m > max_legs:
        raise CapExceeded(f"{m} legs exceeds the brute-force cap of {max_legs}")
    n = double_factorial(m - 1)
    if n > budget:
        raise CapExceeded(f"{n} pairings exceeds the budget of {budget}")


def _census_array(mono: TraceMonomial, budget: int, max_legs: int) -> np.ndarray:
    from ._wick_kernel import census

    m = mono.legs
    _check_budget(m, budget, max_legs)
    return census(mono.gamma(), mono.label_array(), m // 2 + mono.n_traces, m // 2)


def diagram_census(
    spec, budget: int = DEFAULT_PAIRING_BUDGET, max_legs: int = DEFAULT_MAX_LEGS
) -> dict[int, int]:
    """Number of pairings contributing to each power of ``N``."""
    mono = _as_monomial(spec)
    if mono.legs % 2:
        return {}
    counts = _census_array(mono, budget, max_legs).sum(axis=1)
    return {int(e): int(c) for e, c in enumerate(counts) if c}


def wick_moment_bruteforce(
    spec, budget: int = DEFAULT_PAIRING_BUDGET, max_legs: int = DEFAULT_MAX_LEGS
) -> NPolynomial:
    """Moment polynomial by summing ``N**loops`` over all pairings."""
    mono = _as_monomial(spec)
    if not mono.is_single_matrix:
        raise ValueError("brute-force moments take single-matrix monomials; see coupled_moment")
    return NPolynomial(diagram_census(mono, budget, max_legs))


_MEMO: dict[tuple[int, ...], dict[int, int]] = {}


def clear_memo() -> None:
    _MEMO.clear()


def _loop_equation(key: tuple[int, ...], budget: int) -> dict[int, int]:
    """Moment of a sorted (descending) tuple of trace sizes as ``{exp: int}``."""
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    if not key:
        return {0: 1}
    if sum(key) % 2:
        return {}
    if len(_MEMO) >= budget:
        raise CapExceeded(f"loop-equation memo exceeded {budget} entries")

    n, rest = key[0], key[1:]
    out: dict[int, int] = {}

    def accumulate(sizes: list[int], weight: int) -> None:
        shift = sizes.count(0)
        sub = _loop_equation(tuple(sorted((s for s in sizes if s), reverse=True)), budget)
        for e, c in sub.items():
            out[e + shift] = out.get(e + shift, 0) + weight * c

    # the first leg of tr M^n pairs inside its own trace (split) ...
    for j in range(n - 1):
        accumulate([*rest, j, n - 2 - j], 1)
    # ... or with one of the n_i legs of another trace (merge)
    for idx, ni in enumerate(rest):
        accumulate([*rest[:idx], *rest[idx + 1 :], n + ni - 2], ni)

    out = {e: c for e, c in out.items() if c}
    _MEMO[key] = out
    return out


def wick_moment_recursive(spec, memo_budget: int = DEFAULT_MEMO_BUDGET) -> NPolynomial:
    """Moment polynomial from the Gaussian loop equation."""
    mono = _as_monomial(spec)
    key = tuple(sorted(mono.powers, reverse=True))
    needed = sum(key) // 2 + 50
    if sys.getrecursionlimit() < 4 * needed:
        sys.setrecursionlimit(4 * needed)
    return NPolynomial(_loop_equation(key, memo_budget))


def single_trace_moment(j: int) -> NPolynomial:
    """``<tr M^(2j)>`` from the Harer-Zagier three-term recurrence."""
    prev2, prev1 = NPolynomial({1: 1}), NPolynomial({2: 1})
    if j == 0:
        return prev2
    N = NPolynomial({1: 1})
    for k in range(2, j + 1):
        nxt = (N * prev1).scale(4 * k - 2) + prev2.scale((k - 1) * (2 * k - 1) * (2 * k - 3))
        prev2, prev1 = prev1, nxt.scale(Fraction(1, k + 1))
    return prev1


def moment(
    spec,
    method: str = "recursive",
    budget: int = DEFAULT_PAIRING_BUDGET,
    max_legs: int = DEFAULT_MAX_LEGS,
    memo_budget: int = DEFAULT_MEMO_BUDGET,
) -> NPolynomial:
    if method == "recursive":
        return wick_moment_recursive(spec, memo_budget)
    if method == "brute":
        return wick_moment_bruteforce(spec, budget, max_legs)
    raise ValueError(f"unknown method {method!r}")


def replica_coefficient(spec, method: str = "recursive", **caps) -> Fraction:
    """``lim_{N->0} <.>/N``, i.e. the coefficient of ``N**1``."""
    return moment(spec, method, **caps).coefficient(1)


def link_coefficient(spec, order: int, method: str = "recursive", **caps) -> Fraction:
    """Coefficient of ``N**order`` (order 2 collects two-stroke diagrams)."""
    mono = _as_monomial(spec)
    if order < 0 or order > mono.legs // 2 + mono.n_traces:
        raise ValueError(f"order {order} outside [0, m/2 + k]")
    return moment(mono, method, **caps).coefficient(order)


def coupled_moment(
    spec, c, budget: int = DEFAULT_PAIRING_BUDGET, max_legs: int = DEFAULT_MAX_LEGS
) -> NPolynomial:
    """Moment of a two-matrix monomial for ``exp(-tr(A^2 + B^2 - 2cAB)/2)``.

    Propagators are ``<AA> = <BB> = 1/(1-c^2)`` and ``<AB> = c/(1-c^2)``.
    """
    mono = _as_monomial(spec)
    c = Fraction(c)
    if c * c == 1:
        raise InvalidCoupling("coupling must satisfy c^2 != 1")
    if mono.legs % 2:
        return NPolynomial()
    counts = _census_array(mono, budget, max_legs)
    base = Fraction(1) / (1 - c * c) ** (mono.legs // 2)
    out: dict[int, Fraction] = {}
    for loops in range(counts.shape[0]):
        for mixed in range(counts.shape[1]):
            n = int(counts[loops, mixed])
            if n:
                out[loops] = out.get(loops, 0) + n * base * c**mixed
    return NPolynomial(out)
