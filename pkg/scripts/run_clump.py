#!/usr/bin/env python3
"""Scaling of the smallest singular value for clustered Vandermonde nodes.

Fits the log-log slope of sigma_N against the intra-cluster spacing alpha;
the exponent should be lambda - 1 for clusters of size lambda.
"""

import argparse

import numpy as np

from fourstab.experiments import SweepConfig, clump_experiment, fit_loglog_slope


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=int, default=128)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    alphas = (np.geomspace(1e-3, 1e-2, 6) / args.L).tolist()
    for lam in (1, 2):
        cfg = SweepConfig(seed=args.seed, trials=args.trials, output_path=f"clump_lambda{lam}.csv")
        recs = clump_experiment(args.L, args.n, alphas, lam, cfg=cfg)
        med = [
            float(np.median([r.measured["sigma_N"] for r in recs if r.params["alpha"] == a]))
            for a in alphas
        ]
        slope = fit_loglog_slope(alphas, med)
        bad = sum(r.violated for r in recs)
        print(f"lambda={lam}: slope={slope:.4f} (target {lam - 1}), upper-bound violations={bad}")


if __name__ == "__main__":
    main()
