#!/usr/bin/env python3
"""Allowable-perturbation comparison for the half-spectrum guarantee.

For each lattice, prints the largest perturbation each route allows while
still guaranteeing sigma_min >= sqrt(prod M)/2: the additive Frobenius
estimate shrinks with the matrix size, the Kadec-type thresholds do not.
"""

import argparse
import json

from fourstab.experiments import benchmark_comparison


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--m",
        action="append",
        default=None,
        help="lattice sides, e.g. --m 16 --m 2,3 (repeatable)",
    )
    args = ap.parse_args()
    grids = args.m or ["16", "256", "10000", "8,8", "16,16"]
    for text in grids:
        m = tuple(int(x) for x in text.split(","))
        print(json.dumps(benchmark_comparison(m)))


if __name__ == "__main__":
    main()
