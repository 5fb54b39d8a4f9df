"""Degree-16 coefficients of the three-trace replica series, next to the moments they encode."""

import argparse
from dataclasses import dataclass
from math import factorial, prod

from replica_knots import catalogue, moments, series


@dataclass
class TableConfig:
    k: int = 3
    degree: int = 16
    check: bool = True


def main(cfg: TableConfig) -> None:
    s = series.replica_generating_series(cfg.k, cfg.degree)
    rows = sorted(
        ((e, c) for e, c in s.homogeneous(cfg.degree).items() if c and list(e) == sorted(e, reverse=True)),
        key=lambda ec: tuple(-x for x in ec[0]),
    )
    for e, c in rows:
        mean = c * prod(factorial(n) for n in e)
        line = f"{str(list(e)):<14} {str(c):>12}   replica mean {mean}"
        if cfg.check:
            direct = moments.replica_coefficient(list(e))
            line += "  ok" if direct == mean else f"  MISMATCH ({direct})"
        knots = catalogue.knots_for_mean(e)
        if knots:
            line += "  " + " ".join(knots)
        print(line)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=TableConfig.k)
    ap.add_argument("--degree", type=int, default=TableConfig.degree)
    ap.add_argument("--no-check", dest="check", action="store_false")
    main(TableConfig(**vars(ap.parse_args())))
