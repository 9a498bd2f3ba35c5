#!/usr/bin/env python3
"""Condition-number sweep of the sign-perturbed DFT family.

Writes one CSV row (n, kappa, ...) per odd size.  The default grid stops at
2001; pass --n-max to push further (dense decompositions grow like n^3, the
iterative path takes over past the crossover).
"""

import argparse

from fourstab.experiments import SweepConfig, figure1_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=101)
    ap.add_argument("--n-max", type=int, default=2001)
    ap.add_argument("--step", type=int, default=100)
    ap.add_argument("--crossover", type=int, default=1024)
    ap.add_argument("--out", default="figure1.csv")
    args = ap.parse_args()

    sizes = [n for n in range(args.n_min, args.n_max + 1, args.step) if n % 2 == 1]
    cfg = SweepConfig(crossover=args.crossover, output_path=args.out)
    records = figure1_sweep(sizes, cfg)
    for rec in records:
        print(f"n={rec.params['n']:6d}  kappa={rec.measured['kappa']:.6f}  ({rec.params['method']})")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
