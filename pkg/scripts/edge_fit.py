"""Edge exponent of the pooled zero density, and how it moves with the fit window.

The fit regresses log density on log distance to the arc end. Synthetic
samples with a known exponent calibrate the estimator.
"""

import argparse
from dataclasses import dataclass

from replica_knots import zeros


@dataclass
class FitConfig:
    gmax: int = 200
    bins: int = zeros.DEFAULT_BINS
    synthetic: int = 20000


def main(cfg: FitConfig) -> None:
    sets = list(zeros.family_sweep(range(1, cfg.gmax + 1)).values())
    print(f"pooled roots: {sum(len(r) for r in sets)}")
    for skip in (1, 2, 3):
        for span in (6, 10, 16):
            fit = zeros.edge_exponent(sets, cfg.bins, skip=skip, span=span)
            print(f"skip={skip} span={span:2d}  exponent {fit.exponent:+.4f}  ({fit.n_points} bins)")
    for expo in (-0.5, 0.0, 0.5):
        fit = zeros.edge_exponent(zeros.synthetic_edge_sample(cfg.synthetic, expo), cfg.bins)
        print(f"synthetic {expo:+.1f}: recovered {fit.exponent:+.4f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--gmax", type=int, default=FitConfig.gmax)
    ap.add_argument("--bins", type=int, default=FitConfig.bins)
    ap.add_argument("--synthetic", type=int, default=FitConfig.synthetic)
    main(FitConfig(**vars(ap.parse_args())))
