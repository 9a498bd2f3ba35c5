#!/usr/bin/env python3
"""Randomized soundness sweeps: measured extremes versus every bound.

Runs the frequency-stability, node-stability and well-separated sweeps and
reports violation counts (all should be zero).
"""

import argparse

from fourstab.experiments import (
    SweepConfig,
    freq_stability_sweep,
    node_stability_sweep,
    wellsep_sweep,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out-prefix", default="stability")
    args = ap.parse_args()

    ells = [0.05, 0.1, 0.2, 0.24]

    cfg = SweepConfig(seed=args.seed, trials=args.trials, output_path=f"{args.out_prefix}_freq.csv")
    freq = freq_stability_sweep((16,), ells, rank_one=False, cfg=cfg)
    print(f"freq stability : {sum(r.violated for r in freq)} violations / {len(freq)} trials")

    cfg = SweepConfig(seed=args.seed, trials=args.trials, output_path=f"{args.out_prefix}_freq2d.csv")
    freq2 = freq_stability_sweep((8, 8), ells, rank_one=True, cfg=cfg)
    print(f"freq rank-one  : {sum(r.violated for r in freq2)} violations / {len(freq2)} trials")

    cfg = SweepConfig(seed=args.seed, trials=args.trials, output_path=f"{args.out_prefix}_node.csv")
    node = node_stability_sweep(64, 16, [0.05, 0.1], cfg)
    applicable = sum(1 for r in node if r.params["applicable"])
    print(
        f"node stability : {sum(r.violated for r in node)} violations / "
        f"{applicable} applicable of {len(node)} trials"
    )

    cfg = SweepConfig(seed=args.seed, trials=args.trials, output_path=f"{args.out_prefix}_wellsep.csv")
    ws = wellsep_sweep([16, 64, 256], cfg)
    print(f"well separated : {sum(r.violated for r in ws)} violations / {len(ws)} trials")


if __name__ == "__main__":
    main()
