"""Floor numbering on strand-and-rung ("Amida-kuji") band diagrams.

A ladder has ``s`` vertical strands at positions ``0..s-1`` and horizontal
rungs joining adjacent positions ``(i, i+1)``. Strands are closed by joining
the top of each position to its bottom. Reading rungs top to bottom, a rung
is the braid generator ``sigma_i`` when its sign is ``over`` and
``sigma_i^-1`` when ``under``.

The traversal starts at the top of one strand and walks down. Every rung on
the current position carries the walker to the neighbouring position and
changes its floor by one: for an ``over`` rung the walker entering from the
left goes up and the one entering from the right goes down; ``under``
reverses this. Since each rung moves its two strand segments in opposite
directions, the total floor at every level is conserved.

Strands in JSON and in user-facing arguments are numbered from 1.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Sequence

from .errors import (
    CapExceeded,
    ConservationViolated,
    MalformedDiagram,
    MultiComponent,
    NegativeFloor,
    Unsupported,
)
from .seifert import SeifertMatrix

OVER, UNDER = 1, -1
SIGN_NAMES = {OVER: "over", UNDER: "under"}
SIGN_VALUES = {"over": OVER, "under": UNDER, "+": OVER, "-": UNDER, 1: OVER, -1: UNDER}

KNOT_CANDIDATE = "KNOT-CANDIDATE"
UNKNOT_REDUCIBLE = "UNKNOT-REDUCIBLE"
MULTI_COMPONENT = "MULTI-COMPONENT"

DEFAULT_CENSUS_CAP = 20


@dataclass(frozen=True)
class Rung:
    left: int  # 0-based position of the left strand of the pair
    height: int
    sign: int

    def __post_init__(self):
        if self.sign not in (OVER, UNDER):
            raise MalformedDiagram(f"rung sign must be +1 or -1, got {self.sign}")
        if self.left < 0:
            raise MalformedDiagram("rung position must be >= 0")


@dataclass(frozen=True)
class LadderDiagram:
    strands: int
    rungs: tuple[Rung, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise MalformedDiagram("a ladder needs at least two strands")
        rungs = tuple(sorted(self.rungs, key=lambda r: (r.height, r.left)))
        for r in rungs:
            if r.left + 1 >= self.strands:
                raise MalformedDiagram(f"rung on ({r.left + 1},{r.left + 2}) outside {self.strands} strands")
        for a, b in zip(rungs, rungs[1:]):
            if a.height == b.height and abs(a.left - b.left) < 2:
                raise MalformedDiagram(f"rungs sharing a strand both sit at height {a.height}")
        object.__setattr__(self, "rungs", rungs)

    @classmethod
    def from_word(cls, strands: int, pairs: Sequence[int], signs: Sequence[int]) -> "LadderDiagram":
        """Rungs listed top to bottom by 0-based left position and sign."""
        if len(pairs) != len(signs):
            raise MalformedDiagram("pairs and signs differ in length")
        return cls(strands, tuple(Rung(p, h, s) for h, (p, s) in enumerate(zip(pairs, signs))))

    @classmethod
    def from_braid(cls, word: Sequence[int], strands: int | None = None) -> "LadderDiagram":
        """Braid word with ``+i`` for ``sigma_i`` and ``-i`` for its inverse (1-based)."""
        if any(w == 0 for w in word):
            raise MalformedDiagram("braid generators are numbered from 1")
        strands = strands or max((abs(w) for w in word), default=1) + 1
        return cls.from_word(strands, [abs(w) - 1 for w in word], [OVER if w > 0 else UNDER for w in word])

    @property
    def pairs(self) -> tuple[int, ...]:
        return tuple(r.left for r in self.rungs)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(r.sign for r in self.rungs)

    def with_signs(self, signs: Sequence[int]) -> "LadderDiagram":
        return LadderDiagram.from_word(self.strands, self.pairs, signs)

    def braid_word(self) -> list[int]:
        return [r.sign * (r.left + 1) for r in self.rungs]

    def untouched_strands(self) -> list[int]:
        touched = {p for r in self.rungs for p in (r.left, r.left + 1)}
        return [p for p in range(self.strands) if p not in touched]

    def to_json(self) -> dict:
        return {
            "strands": self.strands,
            "rungs": [
                {"pair": [r.left + 1, r.left + 2], "height": r.height, "sign": SIGN_NAMES[r.sign]}
                for r in self.rungs
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LadderDiagram":
        try:
            rungs = []
            for k, item in enumerate(data["rungs"]):
                i, j = (int(x) for x in item["pair"])
                if j != i + 1:
                    raise MalformedDiagram(f"rung pair {item['pair']} is not adjacent")
                sign = SIGN_VALUES.get(item.get("sign", "over"))
                if sign is None:
                    raise MalformedDiagram(f"unknown rung sign {item.get('sign')!r}")
                rungs.append(Rung(i - 1, int(item.get("height", k)), sign))
            return cls(int(data["strands"]), tuple(rungs))
        except (KeyError, TypeError) as exc:
            raise MalformedDiagram(f"bad ladder JSON: {exc}") from exc


@dataclass(frozen=True)
class LadderSkeleton:
    """Strand count and rung positions; signs are chosen later."""

    strands: int
    pairs: tuple[int, ...]

    def diagram(self, signs: Sequence[int]) -> LadderDiagram:
        return LadderDiagram.from_word(self.strands, self.pairs, signs)

    @classmethod
    def of(cls, d: LadderDiagram) -> "LadderSkeleton":
        return cls(d.strands, d.pairs)


def alternating_signs(pairs: Sequence[int], lead: int = OVER) -> tuple[int, ...]:
    """Signs alternating with the parity of the rung position (an alternating diagram)."""
    return tuple(lead if p % 2 == 0 else -lead for p in pairs)


def default_base_floors(strands: int) -> tuple[int, ...]:
    """Outer strands start on floor 1, inner strands on floor 2; two strands start on 2."""
    if strands == 2:
        return (2, 2)
    return tuple(1 if p in (0, strands - 1) else 2 for p in range(strands))


def strand_permutation(d: LadderDiagram) -> list[int]:
    """Bottom position reached from each top position."""
    out = []
    for p in range(d.strands):
        pos = p
        for r in d.rungs:
            if pos == r.left:
                pos += 1
            elif pos == r.left + 1:
                pos -= 1
        out.append(pos)
    return out


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen, out = set(), []
    for p in range(len(perm)):
        if p not in seen:
            cyc = []
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = perm[p]
            out.append(cyc)
    return out


def component_count(d: LadderDiagram) -> int:
    return len(_cycles(strand_permutation(d)))


def linking_numbers(d: LadderDiagram) -> dict[tuple[int, int], Fraction]:
    """Pairwise linking numbers between closed components (half the signed crossings)."""
    comp = {}
    for c, cyc in enumerate(_cycles(strand_permutation(d))):
        for p in cyc:
            comp[p] = c
    owner = list(range(d.strands))  # top position whose strand occupies each position
    lk: dict[tuple[int, int], Fraction] = {}
    for r in d.rungs:
        a, b = comp[owner[r.left]], comp[owner[r.left + 1]]
        if a != b:
            key = (min(a, b), max(a, b))
            lk[key] = lk.get(key, Fraction(0)) + Fraction(r.sign, 2)
        owner[r.left], owner[r.left + 1] = owner[r.left + 1], owner[r.left]
    return lk


@dataclass(frozen=True)
class NumberingSequence:
    """Floors along the one-stroke traversal.

    ``values`` is closed: it returns to the starting floor, so its length is
    ``2r + 1`` for ``r`` rungs. Row ``k`` of ``matrix`` is the ``k``-th pass
    down the ladder, column ``j`` the floor just above rung level ``j``
    (column ``r`` is the bottom); its column sums are the conserved totals.
    ``paired`` splits the closed sequence into its two halves, each crossing
    being met once in either half; for two strands the two forms agree.
    """

    values: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    start_strand: int

    @property
    def open_form(self) -> tuple[int, ...]:
        return self.values[:-1]

    @property
    def paired(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return _halves(self.values)

    def __str__(self) -> str:
        # digits run together only while every floor is a single digit
        if all(0 <= v <= 9 for v in self.values):
            return "".join(str(v) for v in self.values)
        return ",".join(str(v) for v in self.values)


def floor_numbering(
    d: LadderDiagram,
    start_strand: int = 1,
    start_floor: int | None = None,
    base_floors: Sequence[int] | None = None,
    strict: bool = False,
) -> NumberingSequence:
    """Walk the single closed component from the top of ``start_strand`` (1-based)."""
    if not 1 <= start_strand <= d.strands:
        raise MalformedDiagram(f"start strand {start_strand} outside 1..{d.strands}")
    ncomp = component_count(d)
    if ncomp != 1:
        raise MultiComponent(f"traversal closes into {ncomp} components")
    pos = start_strand - 1
    if start_floor is None:
        start_floor = (base_floors or default_base_floors(d.strands))[pos]
    floor = start_floor
    values = [floor]
    rows = []
    for _ in range(d.strands):
        row = [floor]
        for r in d.rungs:
            if pos == r.left:
                floor += r.sign
                pos += 1
                values.append(floor)
            elif pos == r.left + 1:
                floor -= r.sign
                pos -= 1
                values.append(floor)
            if strict and floor < 0:
                raise NegativeFloor(f"floor {floor} reached at rung height {r.height}")
            row.append(floor)
        rows.append(tuple(row))
    if pos != start_strand - 1 or floor != start_floor:
        raise ConservationViolated("traversal did not close on its starting point")
    seq = NumberingSequence(tuple(values), tuple(rows), start_strand)
    _check_conservation(seq.matrix)
    return seq


def _check_conservation(matrix: Sequence[Sequence[int]]) -> None:
    sums = {sum(col) for col in zip(*matrix)}
    if len(sums) > 1:
        raise ConservationViolated(f"column sums {sorted(sums)} are not constant")


@dataclass(frozen=True)
class CrossingMatrix:
    rows: tuple[tuple[int, ...], ...]
    verdict: str

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)


def _halves(vals: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if len(vals) % 2 == 0:
        raise MalformedDiagram("a closed sequence has odd length")
    r = (len(vals) - 1) // 2
    return tuple(vals[: r + 1]), tuple(vals[r:])


def _lift(rows):
    # floors are relative; lift them so the lowest one is 0
    low = min(v for row in rows for v in row)
    return tuple(tuple(v - low for v in row) for row in rows) if low < 0 else tuple(rows)


def crossing_matrix(seq) -> CrossingMatrix:
    """Paired crossing matrix and row-sum verdict.

    ``seq`` is a :class:`NumberingSequence` or a bare closed sequence of a
    two-strand ladder. Rows are the two halves of the closed sequence.
    Conservation is checked on the per-pass matrix, which for a bare
    sequence is the paired matrix itself. Negative floors are lifted
    uniformly, which leaves the verdict unchanged. Fewer than three
    crossings can always be undone, so such input is UNKNOT-REDUCIBLE.
    """
    if isinstance(seq, NumberingSequence):
        rows = _lift(seq.paired)
        _check_conservation(seq.matrix)
    else:
        if isinstance(seq, str):
            seq = seq.split(",") if "," in seq else list(seq)
        vals = [int(v) for v in seq]
        rows = _lift(_halves(vals))
        _check_conservation(rows)
    crossings = len(rows[0]) - 1
    sums = {sum(r) for r in rows}
    verdict = KNOT_CANDIDATE if crossings >= 3 and len(sums) == 1 else UNKNOT_REDUCIBLE
    return CrossingMatrix(tuple(rows), verdict)


def reduce_ladder(d: LadderDiagram) -> LadderDiagram:
    """Cancel rung pairs ``sigma_i sigma_i^-1`` that nothing separates, cyclically."""
    rungs = list(d.rungs)
    changed = True
    while changed and len(rungs) >= 2:
        changed = False
        n = len(rungs)
        for a in range(n):
            ra = rungs[a]
            # the next rung (cyclically) that touches either strand of ra
            for step in range(1, n):
                rb = rungs[(a + step) % n]
                if abs(rb.left - ra.left) < 2:
                    break
            else:
                continue
            if rb.left == ra.left and rb.sign == -ra.sign:
                b = (a + step) % n
                rungs = [r for k, r in enumerate(rungs) if k not in (a, b)]
                changed = True
                break
    return LadderDiagram(d.strands, tuple(rungs))


@dataclass(frozen=True)
class Classification:
    signs: tuple[int, ...]
    verdict: str
    components: int
    sequence: str | None = None
    linked: bool | None = None
    reduced_rungs: int | None = None

    def to_json(self) -> dict:
        return {
            "signs": [SIGN_NAMES[s] for s in self.signs],
            "verdict": self.verdict,
            "components": self.components,
            "sequence": self.sequence,
            "linked": self.linked,
            "reduced_rungs": self.reduced_rungs,
        }


def classify(d: LadderDiagram, start_strand: int = 1) -> Classification:
    ncomp = component_count(d)
    if ncomp > 1:
        linked = any(v != 0 for v in linking_numbers(d).values())
        return Classification(d.signs, MULTI_COMPONENT, ncomp, linked=linked)
    seq = str(floor_numbering(d, start_strand))
    reduced = reduce_ladder(d)
    nred = len(reduced.rungs)
    if nred < 3:
        return Classification(d.signs, UNKNOT_REDUCIBLE, 1, seq, reduced_rungs=nred)
    verdict = crossing_matrix(floor_numbering(reduced, start_strand)).verdict
    return Classification(d.signs, verdict, 1, seq, reduced_rungs=nred)


@dataclass(frozen=True)
class Census:
    skeleton: LadderSkeleton
    records: tuple[Classification, ...]
    counts: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "strands": self.skeleton.strands,
            "pairs": [[p + 1, p + 2] for p in self.skeleton.pairs],
            "counts": dict(self.counts),
            "records": [r.to_json() for r in self.records],
        }


def enumerate_assignments(skeleton, cap: int = DEFAULT_CENSUS_CAP) -> Census:
    """Classify every one of the ``2^r`` sign assignments on a skeleton."""
    if isinstance(skeleton, LadderDiagram):
        skeleton = LadderSkeleton.of(skeleton)
    r = len(skeleton.pairs)
    if r > cap:
        raise CapExceeded(f"{r} rungs gives 2^{r} assignments, above the cap of 2^{cap}")
    records = tuple(classify(skeleton.diagram(signs)) for signs in product((OVER, UNDER), repeat=r))
    counts = Counter({KNOT_CANDIDATE: 0, UNKNOT_REDUCIBLE: 0, MULTI_COMPONENT: 0})
    counts.update(rec.verdict for rec in records)
    return Census(skeleton, records, dict(counts))


def seifert_matrix_from_ladder(d: LadderDiagram) -> SeifertMatrix:
    """Seifert matrix of the closed 2-braid surface: one band per rung, ``n-1`` generators.

    Generator ``i`` runs through the bands of rungs ``i`` and ``i+1``.
    """
    if d.strands != 2:
        raise Unsupported("Seifert matrices are only built for two-strand ladders")
    if component_count(d) != 1:
        raise MultiComponent("the closure is a link, not a knot")
    eps = d.signs
    n = len(eps) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -(eps[i] + eps[i + 1]) // 2
        if i + 1 < n:
            rows[i][i + 1] = (1 + eps[i + 1]) // 2
            rows[i + 1][i] = (eps[i + 1] - 1) // 2
    return SeifertMatrix.of(rows)


def load_ladder(path) -> LadderDiagram:
    return LadderDiagram.from_json(json.loads(Path(path).read_text()))


def load_skeleton(path) -> LadderSkeleton:
    """A skeleton file is ladder JSON whose rung signs are ignored."""
    return LadderSkeleton.of(load_ladder(path))
