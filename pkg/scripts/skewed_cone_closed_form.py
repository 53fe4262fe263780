#!/usr/bin/env python3
"""Compare closed forms of the oriented distance for C = {y1 + y2 >= 0, y2 >= 0}.

Inside A = -C the distance to the complement is the distance to the nearer
of the two boundary rays.  The single-ray formula ``|y1 + y2| / sqrt(2)``
is only right on the part of region B4 where ``y1 >= (sqrt(2) - 1) y2``.
This script samples each region and reports the discrepancy of both
formulas against brute-force boundary sampling.
"""

from __future__ import annotations

import argparse

import numpy as np

from vecfw.cone import Norm, catalog_entry, skewed_2d_region
from vecfw.oracles import brute_force_oriented_distance, planar_boundary

SQRT2 = np.sqrt(2.0)

SINGLE_RAY = {
    "B1": lambda y: y[1],
    "B2": lambda y: np.hypot(*y),
    "B3": lambda y: abs(y[0] + y[1]) / SQRT2,
    "B4": lambda y: -abs(y[0] + y[1]) / SQRT2,
    "B5": lambda y: -abs(y[1]),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    entry = catalog_entry("skewed_2d_negative")
    boundary = planar_boundary("skewed_2d_negative", 30.0)
    rng = np.random.default_rng(args.seed)
    print(f"{'region':<8}{'single-ray max err':>20}{'corrected max err':>20}{'wrong points':>14}")
    for label in ("B1", "B2", "B3", "B4", "B5"):
        pts = []
        while len(pts) < args.points:
            y = rng.uniform(-3, 3, 2)
            if skewed_2d_region(y) == label:
                pts.append(y)
        truth = np.array([brute_force_oriented_distance(y, boundary, entry.membership, Norm.L2) for y in pts])
        naive = np.array([SINGLE_RAY[label](y) for y in pts])
        fixed = np.array([entry.distance(y) for y in pts])
        wrong = int(np.sum(np.abs(naive - truth) > 1e-9))
        print(f"{label:<8}{np.abs(naive - truth).max():>20.3e}{np.abs(fixed - truth).max():>20.3e}"
              f"{wrong:>10}/{args.points}")


if __name__ == "__main__":
    main()
