#!/usr/bin/env python3
"""Timing sweep for the simplex-based equilibrium solvers.

Reports mean and max wall time per game size for the primal-LP and
joint-LP paths.

    python3 scripts/time_solver.py --repeat 50 --sizes 2 4 8 12
"""

import argparse
import sys
import time

from tpass.equilibrium import solve_equilibrium, solve_joint_lp
from tpass.game import random_tpass


def bench(fn, games):
    times = []
    for game in games:
        start = time.perf_counter()
        fn(game)
        times.append(time.perf_counter() - start)
    return sum(times) / len(times), max(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=50)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 6, 8, 12])
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args(argv)

    print(f"{'size':>6} {'primal mean':>12} {'primal max':>12} {'joint mean':>12} {'joint max':>12}")
    for size in args.sizes:
        games = [
            random_tpass(size, size, -1.0, 1.0, seed=args.seed * 7919 + k)
            for k in range(args.repeat)
        ]
        p_mean, p_max = bench(solve_equilibrium, games)
        j_mean, j_max = bench(solve_joint_lp, games)
        print(
            f"{size:>4}x{size:<2}"
            f" {p_mean * 1e3:>10.2f}ms {p_max * 1e3:>10.2f}ms"
            f" {j_mean * 1e3:>10.2f}ms {j_max * 1e3:>10.2f}ms"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
