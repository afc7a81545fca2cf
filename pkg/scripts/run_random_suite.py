#!/usr/bin/env python3
"""Randomized verification sweep over the whole pipeline.

Solves a batch of random separable-sum games, certifies every
equilibrium through all available checks (best response, primal/dual LP
pair, joint LP zero optimum, and at oracle-sized games support
enumeration), and prints worst-case residuals plus timing.

    python3 scripts/run_random_suite.py --games 500 --max-size 8
"""

import argparse
import sys
import time

import numpy as np

from tpass import lp
from tpass.decompose import compose, decompose
from tpass.equilibrium import build_dual_lp, solve_equilibrium, solve_joint_lp, verify_lp_pair
from tpass.game import is_equilibrium, random_tpass
from tpass.oracle import SIZE_CAP, cross_check


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--games", type=int, default=500)
    ap.add_argument("--min-size", type=int, default=2)
    ap.add_argument("--max-size", type=int, default=8)
    ap.add_argument("--lo", type=float, default=-1.0)
    ap.add_argument("--hi", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--tol", type=float, default=1e-8)
    ap.add_argument("--skip-oracle", action="store_true")
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    worst = {
        "best_response": 0.0,
        "slackness": 0.0,
        "duality_gap": 0.0,
        "joint_value": 0.0,
        "round_trip": 0.0,
    }
    oracle_checked = oracle_confirmed = 0
    failures = 0

    start = time.perf_counter()
    for k in range(args.games):
        m = int(rng.integers(args.min_size, args.max_size + 1))
        n = int(rng.integers(args.min_size, args.max_size + 1))
        game = random_tpass(m, n, args.lo, args.hi, seed=args.seed * 1_000_003 + k)
        try:
            sol = solve_equilibrium(game, args.tol)
            report = is_equilibrium(game, sol.p, sol.q, args.tol)
            worst["best_response"] = max(worst["best_response"], report.max_violation)
            worst["slackness"] = max(worst["slackness"], sol.slackness_residual)
            dual_value = lp.solve(build_dual_lp(game)).objective_value
            worst["duality_gap"] = max(worst["duality_gap"], abs(sol.lp_value - dual_value))
            if not verify_lp_pair(game, sol.p, sol.q, args.tol).is_equilibrium:
                raise RuntimeError("lp-pair certificate rejected a solved equilibrium")
            _, value = solve_joint_lp(game, args.tol)
            worst["joint_value"] = max(worst["joint_value"], abs(value))
            bg = compose(game)
            back = compose(decompose(bg).game)
            worst["round_trip"] = max(
                worst["round_trip"],
                float(np.abs(back.B - bg.B).max()),
                float(np.abs(back.C - bg.C).max()),
            )
            if not args.skip_oracle and max(m, n) <= SIZE_CAP:
                oracle_checked += 1
                oracle_confirmed += cross_check(game, sol, args.tol)
        except Exception as exc:  # noqa: BLE001 - summary tool, report and count
            failures += 1
            print(f"game {k} ({m}x{n}): FAILED: {exc}", file=sys.stderr)
    elapsed = time.perf_counter() - start

    print(f"games solved: {args.games - failures}/{args.games} in {elapsed:.2f} s")
    for name, value in worst.items():
        print(f"  worst {name:14s} {value:.3e}")
    if oracle_checked:
        print(f"  oracle confirmed   {oracle_confirmed}/{oracle_checked}")
    ok = failures == 0 and oracle_confirmed == oracle_checked
    print("result:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
