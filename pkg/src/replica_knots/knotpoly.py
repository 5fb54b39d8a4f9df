"""Diagram invariants: Kauffman bracket, Jones polynomial, Vassiliev coefficients.

Diagrams use planar-diagram (PD) codes: a crossing ``X[a, b, c, d]`` lists
its four arc labels counterclockwise, starting from the incoming
under-strand, so the under-strand runs ``a -> c``. The crossing is positive
when the over-strand runs ``d -> b``.

Conventions: ``<unknot> = 1``; the A-smoothing of ``X[a,b,c,d]`` joins
``a-b`` and ``c-d``; ``t = A^-4``. Jones polynomials are stored as
:class:`LaurentPoly` in ``s = t^(1/2)`` so link polynomials with
half-integer powers of ``t`` stay on an integer lattice.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Sequence

from .errors import CapExceeded, MalformedDiagram, NotPalindromic, UnknownKnot, Unsupported
from .polys import IntPolynomial, LaurentPoly, laurent_s_to_z
from .seifert import _det, normalize

DEFAULT_CROSSING_CAP = 16
DATA_DIR = Path(__file__).parent / "data" / "pd"

# -A^2 - A^-2, the value of a closed loop
LOOP = LaurentPoly({2: -1, -2: -1}, "A")


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class PlanarDiagram:
    """PD code plus any crossing-free unknotted components."""

    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def __post_init__(self):
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        if any(len(x) != 4 for x in xs):
            raise MalformedDiagram("every crossing needs four arc labels")
        seen: dict[int, int] = {}
        for x in xs:
            for v in x:
                seen[v] = seen.get(v, 0) + 1
        bad = sorted(v for v, n in seen.items() if n != 2)
        if bad:
            raise MalformedDiagram(f"arc labels {bad} do not appear exactly twice")
        if self.free_loops < 0:
            raise MalformedDiagram("free_loops must be >= 0")
        object.__setattr__(self, "crossings", xs)

    @classmethod
    def unknot(cls) -> "PlanarDiagram":
        return cls((), 1)

    @classmethod
    def trivial_link(cls, mu: int) -> "PlanarDiagram":
        if mu < 1:
            raise ValueError("need at least one component")
        return cls((), mu)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def labels(self) -> list[int]:
        return sorted({v for x in self.crossings for v in x})

    def _occurrences(self) -> dict[int, list[tuple[int, int]]]:
        occ: dict[int, list[tuple[int, int]]] = {}
        for k, x in enumerate(self.crossings):
            for p, v in enumerate(x):
                occ.setdefault(v, []).append((k, p))
        return occ

    def _walk(self) -> tuple[dict[tuple[int, int], bool], list[list[int]]]:
        """Orient every arc slot (True = incoming) and list components by crossing slots."""
        occ = self._occurrences()
        incoming: dict[tuple[int, int], bool] = {}
        components = []

        def run(k: int, p: int) -> list[int]:
            labels = []
            start = (k, p)
            while True:
                incoming[(k, p)] = True
                q = (p + 2) % 4
                incoming[(k, q)] = False
                label = self.crossings[k][q]
                labels.append(label)
                a, b = occ[label]
                k, p = b if a == (k, q) else a
                if (k, p) == start:
                    return labels

        # under-strands fix the direction; purely over components get an arbitrary one
        for k in range(len(self.crossings)):
            if (k, 0) not in incoming:
                components.append(run(k, 0))
        for k in range(len(self.crossings)):
            if (k, 1) not in incoming:
                components.append(run(k, 1))
        return incoming, components

    def signs(self) -> tuple[int, ...]:
        incoming, _ = self._walk()
        return tuple(1 if incoming[(k, 3)] else -1 for k in range(len(self.crossings)))

    def component_count(self) -> int:
        return len(self._walk()[1]) + self.free_loops

    def to_json(self) -> dict:
        return {"pd": [list(x) for x in self.crossings], "free_loops": self.free_loops}

    @classmethod
    def from_json(cls, data) -> "PlanarDiagram":
        if isinstance(data, list):
            data = {"pd": data}
        try:
            xs = tuple(tuple(x) for x in data["pd"])
        except (KeyError, TypeError) as exc:
            raise MalformedDiagram(f"bad PD JSON: {exc}") from exc
        loops = int(data.get("free_loops", 0))
        if not xs and loops == 0:
            loops = 1
        d = cls(xs, loops)
        # stated signs are optional; when given they must match the orientation walk
        if "signs" in data and tuple(int(v) for v in data["signs"]) != d.signs():
            raise MalformedDiagram(f"stated signs {data['signs']} disagree with the diagram ({list(d.signs())})")
        return d


def writhe(d: PlanarDiagram) -> int:
    return sum(d.signs())


def _state_range(d: PlanarDiagram, lo: int, hi: int) -> dict[int, int]:
    """Bracket contributions ``{A exponent: coefficient}`` from states ``lo..hi-1``."""
    xs = d.crossings
    c = len(xs)
    labels = d.labels
    out: dict[int, int] = {}
    loop_terms: dict[int, dict[int, int]] = {}
    for state in range(lo, hi):
        uf = _UnionFind()
        n_a = 0
        for k in range(c):
            a, b, cc, dd = xs[k]
            if (state >> k) & 1:
                uf.union(a, dd)
                uf.union(b, cc)
            else:
                n_a += 1
                uf.union(a, b)
                uf.union(cc, dd)
        loops = len({uf.find(v) for v in labels}) + d.free_loops
        power = loop_terms.get(loops)
        if power is None:
            power = (LOOP ** (loops - 1)).terms
            loop_terms[loops] = power
        shift = n_a - (c - n_a)
        for e, v in power.items():
            out[e + shift] = out.get(e + shift, 0) + v
    return out


def kauffman_bracket(
    d: PlanarDiagram, cap: int = DEFAULT_CROSSING_CAP, chunks: int = 1, workers: int = 1
) -> LaurentPoly:
    """State sum over the ``2^c`` smoothings, split into ``chunks`` partial sums."""
    c = d.n_crossings
    if c > cap:
        raise CapExceeded(f"{c} crossings exceeds the cap of {cap}")
    if c == 0:
        return LOOP ** (max(d.free_loops, 1) - 1)
    total = 1 << c
    chunks = max(1, min(chunks, total))
    bounds = [(i * total // chunks, (i + 1) * total // chunks) for i in range(chunks)]
    if workers > 1 and chunks > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_state_range, [d] * chunks, *zip(*bounds)))
    else:
        parts = [_state_range(d, lo, hi) for lo, hi in bounds]
    out = LaurentPoly({}, "A")
    for part in parts:
        out = out + LaurentPoly(part, "A")
    return out


def jones_polynomial(d: PlanarDiagram, cap: int = DEFAULT_CROSSING_CAP, **kw) -> LaurentPoly:
    """``(-A^3)^(-w) <d>`` with ``t = A^-4``, returned in ``s = t^(1/2)``."""
    bracket = kauffman_bracket(d, cap, **kw)
    w = writhe(d)
    norm = LaurentPoly({-3 * w: (-1) ** (w % 2)}, "A")
    v = norm * bracket
    # A = s^(-1/2): every exponent of A must be even
    return v.rescale_exponents(-2, "s")


def trivial_link_jones(mu: int) -> LaurentPoly:
    """``(-1)^(mu-1) (t^(1/2) + t^(-1/2))^(mu-1)`` in ``s = t^(1/2)``."""
    return LaurentPoly({1: 1, -1: 1}, "s") ** (mu - 1) * (-1) ** (mu - 1)


def in_t(v: LaurentPoly) -> LaurentPoly:
    """Re-express a knot polynomial stored in ``s`` with integer powers of ``t``."""
    return v.rescale_exponents(2, "t")


def format_jones(v: LaurentPoly) -> str:
    if not v.terms:
        return "0"
    parts = []
    for i, (e, c) in enumerate(sorted(v.terms.items(), reverse=True)):
        power = "" if e == 0 else (f"t^{e // 2}" if e % 2 == 0 else f"t^({e}/2)")
        if e == 2:
            power = "t"
        mag = abs(c)
        body = power if power and mag == 1 else (f"{mag}*{power}" if power else str(mag))
        sign = "-" if c < 0 else "+"
        parts.append((sign if sign == "-" else "") + body if i == 0 else f" {sign} {body}")
    return "".join(parts)


@dataclass(frozen=True)
class SkeinResult:
    holds: bool
    residual: LaurentPoly


def skein_check(l_plus: PlanarDiagram, l_minus: PlanarDiagram, l_zero: PlanarDiagram) -> SkeinResult:
    """Test ``t^-1 V(L+) - t V(L-) = (t^(1/2) - t^(-1/2)) V(L0)`` exactly."""
    vp, vm, v0 = (jones_polynomial(x) for x in (l_plus, l_minus, l_zero))
    lhs = vp.shift(-2) - vm.shift(2)
    rhs = LaurentPoly({1: 1, -1: -1}, "s") * v0
    residual = lhs - rhs
    return SkeinResult(residual.is_zero(), residual)


def _relabel(xs, uf: _UnionFind):
    return tuple(tuple(uf.find(v) for v in x) for x in xs)


def switch_crossing(d: PlanarDiagram, k: int) -> PlanarDiagram:
    """Swap over and under at crossing ``k``."""
    incoming, _ = d._walk()
    a, b, c, e = d.crossings[k]
    new = (e, a, b, c) if incoming[(k, 3)] else (b, c, e, a)
    xs = list(d.crossings)
    xs[k] = new
    return PlanarDiagram(tuple(xs), d.free_loops)


def smooth_crossing(d: PlanarDiagram, k: int) -> PlanarDiagram:
    """Orientation-respecting smoothing of crossing ``k``."""
    incoming, _ = d._walk()
    a, b, c, e = d.crossings[k]
    over_in, over_out = (e, b) if incoming[(k, 3)] else (b, e)
    uf = _UnionFind()
    uf.union(a, over_out)
    uf.union(over_in, c)
    rest = _relabel(d.crossings[:k] + d.crossings[k + 1 :], uf)
    present = {v for x in rest for v in x}
    closed = len({uf.find(v) for v in (a, b, c, e)} - present)
    return PlanarDiagram(rest, d.free_loops + closed)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    out = d
    for k in range(d.n_crossings):
        out = switch_crossing(out, k)
    return out


def skein_triple(d: PlanarDiagram, k: int) -> tuple[PlanarDiagram, PlanarDiagram, PlanarDiagram]:
    """``(L+, L-, L0)`` obtained by resolving crossing ``k`` of ``d``."""
    other = switch_crossing(d, k)
    zero = smooth_crossing(d, k)
    return (d, other, zero) if d.signs()[k] > 0 else (other, d, zero)


def pd_from_braid(word: Sequence[int], strands: int | None = None) -> PlanarDiagram:
    """PD code of a braid closure; ``+i`` is the positive crossing ``sigma_i`` (1-based).

    Strands run downward. At ``sigma_i`` the strand arriving at position
    ``i+1`` crosses over the one arriving at position ``i``.
    """
    if any(w == 0 for w in word):
        raise MalformedDiagram("braid generators are numbered from 1")
    strands = strands or max((abs(w) for w in word), default=1) + 1
    if any(abs(w) >= strands for w in word):
        raise MalformedDiagram("generator index exceeds the strand count")
    current = list(range(strands))
    nxt = strands
    raw = []
    for w in word:
        i = abs(w) - 1
        p, q = current[i], current[i + 1]
        p_out, q_out = nxt, nxt + 1  # p continues to position i+1, q to position i
        nxt += 2
        if w > 0:
            raw.append((p, q_out, p_out, q))
        else:
            raw.append((q, p, q_out, p_out))
        current[i], current[i + 1] = q_out, p_out
    # close up: the bottom arc at each position is the top arc at that position
    uf = _UnionFind()
    for pos in range(strands):
        uf.union(current[pos], pos)
    xs = _relabel(raw, uf)
    used = {v for x in xs for v in x}
    loops = sum(1 for pos in range(strands) if uf.find(pos) not in used)
    # compact labels to 1..2c for readability
    order = {v: i + 1 for i, v in enumerate(sorted(used))}
    xs = tuple(tuple(order[v] for v in x) for x in xs)
    return PlanarDiagram(xs, loops)


def alexander_from_pd(d: PlanarDiagram) -> IntPolynomial:
    """Alexander polynomial of a knot diagram from its Wirtinger presentation.

    Each crossing relates its over-arc ``o`` and the incoming and outgoing
    under-arcs; Fox derivatives give the rows ``(1-t, t, -1)`` for positive
    and ``(t-1, 1, -t)`` for negative crossings. Any first minor is the
    polynomial up to units.
    """
    if d.component_count() != 1:
        raise Unsupported("the Wirtinger route here is for knots only")
    if d.n_crossings == 0:
        return IntPolynomial((1,))
    uf = _UnionFind()
    for x in d.crossings:
        uf.union(x[1], x[3])
    arcs = sorted({uf.find(v) for v in d.labels})
    index = {a: i for i, a in enumerate(arcs)}
    n = len(arcs)
    rows = [[IntPolynomial(()) for _ in range(n)] for _ in range(d.n_crossings)]
    for k, (x, sign) in enumerate(zip(d.crossings, d.signs())):
        o, i_in, i_out = index[uf.find(x[1])], index[uf.find(x[0])], index[uf.find(x[2])]
        if sign > 0:
            entries = ((o, (1, -1)), (i_in, (0, 1)), (i_out, (-1,)))
        else:
            entries = ((o, (-1, 1)), (i_in, (1,)), (i_out, (0, -1)))
        for col, coeffs in entries:
            rows[k][col] = rows[k][col] + IntPolynomial(coeffs)
    minor = [row[:-1] for row in rows[:-1]]
    return normalize(_det(minor))


def conway_from_alexander(delta: IntPolynomial) -> IntPolynomial:
    """The polynomial ``P`` with ``P(t^(1/2) - t^(-1/2))`` equal to normalized ``delta``."""
    p = normalize(delta)
    if not p.coeffs:
        raise NotPalindromic("zero polynomial")
    if p.coeffs != p.coeffs[::-1] or p.degree % 2:
        raise NotPalindromic(f"{p} is not a symmetric knot polynomial")
    if p(1) < 0:
        p = -p
    terms = {2 * k - p.degree: c for k, c in enumerate(p.coeffs) if c}
    return laurent_s_to_z(terms)


def vassiliev_coefficients(v: LaurentPoly, jmax: int) -> list[Fraction]:
    """Taylor coefficients ``v_0..v_jmax`` of ``V(e^x)`` for ``V`` stored in ``s``."""
    out = []
    for j in range(jmax + 1):
        total = sum((c * Fraction(e, 2) ** j for e, c in v.terms.items()), Fraction(0))
        out.append(total / factorial(j))
    return out


def load_pd(path) -> PlanarDiagram:
    return PlanarDiagram.from_json(json.loads(Path(path).read_text()))


def fixture(name: str) -> PlanarDiagram:
    """Shipped PD fixture by name, e.g. ``"3_1"`` or ``"hopf"``."""
    path = DATA_DIR / f"{name}.json"
    if not path.exists():
        raise UnknownKnot(f"no PD fixture named {name!r}")
    return load_pd(path)


def fixture_names() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.json"))
