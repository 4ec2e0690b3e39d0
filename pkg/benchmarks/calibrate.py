#!/usr/bin/env python3
"""Schedule and iteration-count calibration at benchmark scale.

The published 2000-spin instances are not redistributable, so this sweep
uses generated stand-ins from the same distributions: a random graph with
the edge density of G22 and a fully connected +-1 instance matching K2000.
It reports mean/best cut over seeded batches for a range of t_f values,
which is how the shipped defaults (default schedule, t_f = 2000 for the
2000-spin protocol) were chosen.  Run time is a few minutes.
"""

import argparse
import time

import numpy as np

import nmfa


def sweep(problem, label, tf_values, runs, threads):
    print(f"\n{label}: n={problem.n}, edges={problem.num_edges}")
    print(f"{'t_f':>6} {'mean_cut':>10} {'best_cut':>10} {'ms/run':>8}")
    for t_f in tf_values:
        params = nmfa.NmfaParams(t_f=t_f, seed=1)
        t0 = time.perf_counter()
        results = nmfa.nmfa_batch(problem, params, runs, threads=threads)
        per_run = (time.perf_counter() - t0) / runs
        cuts = [nmfa.cut_value(problem, r.final_config) for r in results]
        print(f"{t_f:>6} {np.mean(cuts):>10.1f} {max(cuts):>10.0f} {per_run * 1e3:>8.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=20, help="runs per sweep point")
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--quick", action="store_true", help="smaller t_f grid")
    args = ap.parse_args()

    tf_values = [500, 1000, 2000] if args.quick else [200, 500, 1000, 2000, 4000]

    g22_like = nmfa.gen_dense_maxcut(2000, 0.01, seed=7)
    sweep(g22_like, "random graph at G22 density (w=+1)", tf_values, args.runs, args.threads)

    k2000_like = nmfa.gen_sk(2000, seed=7)
    sweep(k2000_like, "fully connected +-1 (K2000 analog)", tf_values, args.runs, args.threads)

    moebius = nmfa.moebius_ladder(16)
    ground = nmfa.brute_force_ground(moebius)
    params = nmfa.NmfaParams(t_f=100, seed=0)
    results = nmfa.nmfa_batch(moebius, params, 100, threads=args.threads)
    p = nmfa.success_probability(results, ground)
    print(f"\nmoebius-16 @ t_f=100, default schedule: p_success={p:.2f} "
          f"(ground energy {ground.energy:.0f})")


if __name__ == "__main__":
    main()
