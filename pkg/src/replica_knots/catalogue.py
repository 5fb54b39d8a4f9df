"""Knot table: Rolfsen names and their replica-limit Gaussian means.

The data lives in ``data/catalogue.json``. The correspondence is
many-to-one (several knots share a monomial), so lookups by monomial return
lists.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .errors import UnknownKnot
from .moments import TraceMonomial, replica_coefficient

DATA_FILE = Path(__file__).parent / "data" / "catalogue.json"
NAME_RE = re.compile(r"\d+_\d+")
BRUTE_FORCE_LEGS = 16


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    monomial: tuple[int, ...]
    alternating: bool
    sources: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if not NAME_RE.fullmatch(self.name):
            raise ValueError(f"bad knot name {self.name!r}")
        if sum(self.monomial) % 2:
            raise ValueError(f"{self.name}: monomial {self.monomial} has odd degree")

    @property
    def trace_monomial(self) -> TraceMonomial:
        return TraceMonomial.from_powers(self.monomial)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "monomial": list(self.monomial),
            "alternating": self.alternating,
            "sources": list(self.sources),
            "flags": list(self.flags),
        }


def _key(spec) -> tuple[int, ...]:
    if isinstance(spec, TraceMonomial):
        spec = spec.powers
    elif isinstance(spec, str):
        spec = TraceMonomial.parse(spec).powers
    return tuple(sorted((int(n) for n in spec), reverse=True))


@lru_cache(maxsize=None)
def load_catalogue(path: str | None = None) -> tuple[CatalogueEntry, ...]:
    data = json.loads(Path(path or DATA_FILE).read_text())
    return tuple(
        CatalogueEntry(
            e["name"],
            tuple(e["monomial"]),
            bool(e.get("alternating", True)),
            tuple(e.get("sources", ())),
            tuple(e.get("flags", ())),
        )
        for e in data["entries"]
    )


def entry(name: str) -> CatalogueEntry:
    name = name.strip()
    for e in load_catalogue():
        if e.name == name:
            return e
    raise UnknownKnot(f"{name!r} is not in the catalogue")


def mean_for_knot(name: str) -> TraceMonomial:
    return entry(name).trace_monomial


def knots_for_mean(spec) -> list[str]:
    key = _key(spec)
    return [e.name for e in load_catalogue() if _key(e.monomial) == key]


def torus_series(n: int) -> tuple[str, tuple[int, int]]:
    """The ``(2, n)`` torus knot ``n_1`` and its mean ``(tr M^n)^2``."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    return f"{n}_1", (n, n)


@dataclass
class ValidationRow:
    name: str
    monomial: tuple[int, ...]
    even_degree: bool
    replica: Fraction
    route: str

    @property
    def ok(self) -> bool:
        return self.even_degree and self.replica != 0


@dataclass
class ValidationReport:
    rows: list[ValidationRow] = field(default_factory=list)
    absent_vanishing: bool = True

    @property
    def ok(self) -> bool:
        return self.absent_vanishing and all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "vanishing_monomials_absent": self.absent_vanishing,
            "entries": [
                {
                    "name": r.name,
                    "monomial": list(r.monomial),
                    "even_degree": r.even_degree,
                    "replica": str(r.replica),
                    "route": r.route,
                    "ok": r.ok,
                }
                for r in self.rows
            ],
        }


def validate_catalogue(brute_force_legs: int = BRUTE_FORCE_LEGS) -> ValidationReport:
    """Every monomial has even degree and a non-zero replica coefficient.

    Pairings are enumerated directly up to ``brute_force_legs`` legs; larger
    monomials fall back to the loop equation.
    """
    report = ValidationReport()
    cache: dict[tuple[int, ...], tuple[Fraction, str]] = {}
    for e in load_catalogue():
        key = _key(e.monomial)
        if key not in cache:
            if sum(key) <= brute_force_legs:
                cache[key] = (replica_coefficient(key, "brute"), "brute")
            else:
                cache[key] = (replica_coefficient(key), "recursive")
        value, route = cache[key]
        report.rows.append(ValidationRow(e.name, e.monomial, sum(e.monomial) % 2 == 0, value, route))
    # monomials whose replica limit vanishes cannot stand for a knot
    report.absent_vanishing = all(r.replica != 0 for r in report.rows) and not knots_for_mean([3, 3, 3, 3])
    return report
