"""Zeros of integer polynomials and their unit-circle statistics.

Two root finders share the Aberth-Ehrlich simultaneous iteration:

* :func:`find_roots` works on monomial coefficients in ``mpmath`` at an
  escalating working precision, for any integer polynomial;
* :func:`trivalent_roots` evaluates the bidiagonal-family polynomial via its
  three-term recursion in compiled double precision, which keeps degree-400
  sweeps cheap even though the monomial coefficients reach ``10^230``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath
import numpy as np
from numba import njit

from .errors import InsufficientData, NoConvergence, OffCircle
from .polys import IntPolynomial

DEFAULT_DIGITS = 60
MAX_DIGITS = 480
RESIDUAL_TOL = 1e-12
EDGE_ANGLE = math.pi / 3
DEFAULT_BINS = 64


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    degree: int
    digits: int

    def __post_init__(self):
        if len(self.roots) != self.degree or len(self.residuals) != self.degree:
            raise ValueError("root count must equal the degree")

    def __len__(self) -> int:
        return self.degree

    @property
    def values(self) -> np.ndarray:
        return np.array(self.roots, dtype=complex)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    def is_conjugate_closed(self, tol: float = 1e-9) -> bool:
        z = self.values
        if z.size == 0:
            return True
        gap = np.abs(np.conj(z)[:, None] - z[None, :]).min(axis=1)
        return bool(gap.max() <= tol)


def _aberth_mp(high: list, dps: int, max_iter: int):
    """Aberth iteration on coefficients listed highest degree first."""
    n = len(high) - 1
    radius = 1.05 * abs(high[-1] / high[0]) ** (mpmath.mpf(1) / n)
    # the angular offset keeps starts off the real axis and away from symmetric stalls
    z = [radius * mpmath.expj(2 * mpmath.pi * k / n + 0.4) for k in range(n)]
    done = [False] * n
    eps = mpmath.mpf(10) ** (-(dps // 3))
    for _ in range(max_iter):
        for k in range(n):
            if done[k]:
                continue
            zk = z[k]
            p, dp = mpmath.polyval(high, zk, derivative=True)
            if p == 0:
                done[k] = True
                continue
            ratio = p / dp
            s = mpmath.fsum(1 / (zk - z[j]) for j in range(n) if j != k)
            w = ratio / (1 - ratio * s)
            z[k] = zk - w
            done[k] = abs(w) < eps * max(1, abs(zk))
        if all(done):
            return z
    return None


def find_roots(
    p: IntPolynomial,
    digits: int = DEFAULT_DIGITS,
    max_digits: int = MAX_DIGITS,
    tol: float = RESIDUAL_TOL,
    max_iter: int = 500,
) -> RootSet:
    """All complex roots with ``|p(r)| / ||p||_1 < tol``.

    Factors of ``t`` contribute exact zero roots. The working precision
    doubles from ``digits`` until every residual passes or ``max_digits`` is
    exceeded.
    """
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    low = p.lowest_power()
    core = p.strip_low()
    zeros = [0j] * low
    if core.degree == 0:
        return RootSet(tuple(zeros), (0.0,) * low, p.degree, digits)
    norm = core.norm1()
    dps = digits
    while dps <= max_digits:
        with mpmath.workdps(dps):
            high = [mpmath.mpf(c) for c in core.high_first()]
            z = _aberth_mp(high, dps, max_iter)
            if z is not None:
                res = [float(abs(mpmath.polyval(high, r)) / norm) for r in z]
                if max(res) < tol:
                    roots = [complex(r) for r in z]
                    order = sorted(range(len(roots)), key=lambda i: (np.angle(roots[i]), abs(roots[i])))
                    return RootSet(
                        tuple(zeros + [roots[i] for i in order]),
                        (0.0,) * low + tuple(res[i] for i in order),
                        p.degree,
                        dps,
                    )
        dps *= 2
    raise NoConvergence(f"roots of a degree-{p.degree} polynomial did not converge at {max_digits} digits")


@njit(cache=True)
def _trivalent_eval(z, n, skip):
    """``p/p'`` and ``log|p|`` of the family polynomial of size ``n`` at each ``z``."""
    m = z.shape[0]
    ratio = np.zeros(m, np.complex128)
    logabs = np.zeros(m, np.float64)
    for k in range(m):
        if skip[k]:
            continue
        t = z[k]
        prev, cur = 1.0 + 0j, t - 1.0
        dprev, dcur = 0j, 1.0 + 0j
        logscale = 0.0
        for j in range(1, n):
            d = 1.0 if j == n - 1 else 2.0
            nxt = (t - 1.0) * d * cur + t * prev
            dnxt = d * cur + (t - 1.0) * d * dcur + prev + t * dprev
            prev, cur, dprev, dcur = cur, nxt, dcur, dnxt
            s = abs(cur) + abs(dcur)
            if s > 1e100 or (s < 1e-100 and s > 0.0):
                prev /= s
                cur /= s
                dprev /= s
                dcur /= s
                logscale += math.log(s)
        ratio[k] = cur / dcur if dcur != 0 else 0j
        logabs[k] = (math.log(abs(cur)) if cur != 0 else -np.inf) + logscale
    return ratio, logabs


@njit(cache=True)
def _trivalent_aberth(n, max_iter, eps, spread):
    # starts spread over |arg| < spread, slightly outside the circle and
    # offset so no start sits on the real axis
    z = np.empty(n, np.complex128)
    for k in range(n):
        z[k] = 1.05 * np.exp(1j * spread * (2.0 * (k + 0.4) / n - 1.0))
    done = np.zeros(n, np.bool_)
    for it in range(max_iter):
        ratio, _ = _trivalent_eval(z, n, done)
        for k in range(n):
            if done[k]:
                continue
            s = 0j
            for j in range(n):
                if j != k:
                    s += 1.0 / (z[k] - z[j])
            w = ratio[k] / (1.0 - ratio[k] * s)
            z[k] -= w
            done[k] = abs(w) < eps * max(1.0, abs(z[k]))
        if done.all():
            return z, it + 1
    return z, -1


def trivalent_roots(
    g: int, max_iter: int = 1000, tol: float = RESIDUAL_TOL, spread: float = 1.1 * EDGE_ANGLE
) -> RootSet:
    """Roots of the size-``2g`` bidiagonal-family Alexander polynomial.

    Starting points cover ``|arg| < spread``; any spread converges, this
    one just saves iterations. Residuals are ``|p(r)| / ||p||_1`` with the
    norm taken from the exact integer coefficients.
    """
    from .seifert import alexander_trivalent_recursive

    if g < 1:
        raise ValueError("g must be >= 1")
    n = 2 * g
    z, iters = _trivalent_aberth(n, max_iter, 1e-14, spread)
    if iters < 0:
        raise NoConvergence(f"double-precision iteration stalled for g={g}")
    _, logabs = _trivalent_eval(z, n, np.zeros(n, np.bool_))
    lognorm = math.log(alexander_trivalent_recursive(g).norm1())
    res = np.exp(logabs - lognorm)
    if res.max() >= tol:
        raise NoConvergence(f"residual {res.max():.2e} above {tol:.0e} for g={g}")
    order = np.lexsort((np.abs(z), np.angle(z)))
    return RootSet(tuple(complex(x) for x in z[order]), tuple(float(r) for r in res[order]), n, 16)


@dataclass(frozen=True)
class CircleReport:
    max_deviation: float
    deviations: tuple[float, ...]
    off_circle: tuple[int, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return not self.off_circle


def _values(roots) -> np.ndarray:
    if isinstance(roots, RootSet):
        return roots.values
    return np.asarray(list(roots), dtype=complex)


def unit_circle_report(roots, tol: float = 1e-10) -> CircleReport:
    z = _values(roots)
    dev = np.abs(np.abs(z) - 1.0)
    off = tuple(int(i) for i in np.flatnonzero(dev > tol))
    return CircleReport(float(dev.max(initial=0.0)), tuple(float(d) for d in dev), off, tol)


@dataclass(frozen=True)
class ArcBounds:
    min_real: float
    max_abs_arg: float
    min_abs_arg: float


def arc_bounds(roots, tol: float = 1e-8) -> ArcBounds:
    """Extent of a locus that lies on the unit circle."""
    report = unit_circle_report(roots, tol)
    if not report.passed:
        raise OffCircle(f"{len(report.off_circle)} roots deviate from |t| = 1 by more than {tol}")
    z = _values(roots)
    if z.size == 0:
        raise InsufficientData("no roots")
    arg = np.abs(np.angle(z))
    return ArcBounds(float(z.real.min()), float(arg.max()), float(arg.min()))


def _pooled_args(root_sets) -> np.ndarray:
    if isinstance(root_sets, RootSet) or isinstance(root_sets, np.ndarray):
        root_sets = [root_sets]
    parts = [np.abs(np.angle(_values(r))) for r in root_sets]
    return np.concatenate(parts) if parts else np.zeros(0)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    @property
    def width(self) -> float:
        return float(self.edges[1] - self.edges[0]) if len(self.edges) > 1 else 0.0


def angular_density(root_sets, bins: int = DEFAULT_BINS, edge: float = EDGE_ANGLE) -> Histogram:
    """Histogram of ``|arg r|`` on ``[0, edge]``, pooled over root sets."""
    return _histogram(_pooled_args(root_sets), bins, edge)


def _histogram(args: np.ndarray, bins: int, edge: float) -> Histogram:
    if args.size == 0:
        return Histogram(np.zeros(0), np.zeros(0, dtype=int))
    # rounding can push a root a hair past the edge; it belongs in the last bin
    args = np.clip(args, 0.0, edge)
    counts, edges = np.histogram(args, bins=bins, range=(0.0, edge))
    return Histogram(edges, counts)


@dataclass(frozen=True)
class EdgeFit:
    exponent: float
    intercept: float
    residual: float
    n_roots: int
    n_points: int


def edge_exponent(
    root_sets,
    bins: int = DEFAULT_BINS,
    edge: float = EDGE_ANGLE,
    skip: int = 2,
    span: float = 10.0,
    min_roots: int = 200,
) -> EdgeFit:
    """Slope of ``log(density)`` against ``log(edge - theta)``.

    The ``skip`` bins nearest the edge are dropped and the fit covers
    distances from the inner side of the first kept bin out to ``span``
    times that distance.
    """
    args = _pooled_args(root_sets)
    if args.size < min_roots:
        raise InsufficientData(f"{args.size} roots, need at least {min_roots}")
    hist = _histogram(args, bins, edge)
    w = hist.width
    delta = edge - hist.centers
    lo = (skip + 0.5) * w
    sel = (delta >= lo - 1e-12) & (delta <= span * lo + 1e-12) & (hist.counts > 0)
    if sel.sum() < 3:
        raise InsufficientData("fewer than three populated bins in the fit window")
    x = np.log(delta[sel])
    y = np.log(hist.counts[sel] / (args.size * w))
    (slope, intercept), res, *_ = np.polyfit(x, y, 1, full=True)
    rms = float(np.sqrt(res[0] / sel.sum())) if res.size else 0.0
    return EdgeFit(float(slope), float(intercept), rms, int(args.size), int(sel.sum()))


def synthetic_edge_sample(n: int, exponent: float = -0.5, edge: float = EDGE_ANGLE) -> np.ndarray:
    """Deterministic points with density ``(edge - theta)^exponent`` on ``[0, edge]``.

    Quantiles ``u_i = (i + 1/2)/n`` are mapped through the inverse CDF, so
    ``exponent = 0`` gives a uniform grid.
    """
    u = (np.arange(n) + 0.5) / n
    delta = edge * u ** (1.0 / (1.0 + exponent))
    return np.exp(1j * (edge - delta))


def family_sweep(gs: Iterable[int]) -> dict[int, RootSet]:
    return {g: trivalent_roots(g) for g in gs}


def torus_endpoint_args(n: int) -> Sequence[float]:
    """Arguments ``(2j+1) pi / n`` of the roots of ``(t^n + 1)/(t + 1)`` in ``(0, pi)``."""
    return [(2 * j + 1) * math.pi / n for j in range((n - 1) // 2)]
