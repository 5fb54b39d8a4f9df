"""Classify every over/under assignment on a few ladder skeletons and compare with Jones.

The crossing-matrix verdict is a heuristic; the Jones polynomial of the
closed braid tells which diagrams are really knotted.
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from replica_knots import bands, knotpoly
from replica_knots.polys import LaurentPoly

SKELETONS = {
    "2 strands, 3 rungs": (2, (0, 0, 0)),
    "2 strands, 5 rungs": (2, (0,) * 5),
    "3 strands, 8 rungs": (3, (1, 0, 1, 0, 1, 1, 0, 0)),
}


@dataclass
class CensusConfig:
    jones: bool = True


def main(cfg: CensusConfig) -> None:
    unknot = LaurentPoly({0: 1}, "s")
    for label, (strands, pairs) in SKELETONS.items():
        census = bands.enumerate_assignments(bands.LadderSkeleton(strands, pairs))
        print(f"{label}: {census.counts}")
        if not cfg.jones:
            continue
        tally = Counter()
        for rec in census.records:
            if rec.verdict == bands.MULTI_COMPONENT:
                continue
            d = bands.LadderSkeleton(strands, pairs).diagram(rec.signs)
            word = d.braid_word()
            knotted = knotpoly.jones_polynomial(knotpoly.pd_from_braid(word, strands)) != unknot
            tally[(rec.verdict, "knotted" if knotted else "unknot")] += 1
        for (verdict, truth), n in sorted(tally.items()):
            print(f"    {verdict:<17} {truth:<8} {n}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--no-jones", dest="jones", action="store_false")
    main(CensusConfig(**vars(ap.parse_args())))
