"""Acceptance suite: one test per criterion, each printing a pass/fail
line (run with ``pytest tests/test_acceptance.py -v -s`` to see them)."""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from tpass import lp
from tpass.decompose import BimatrixGame, compose, decompose, is_separable_sum
from tpass.demo import dilemma, dilemma_near_miss, dilemma_summary
from tpass.equilibrium import (
    build_dual_lp,
    check_joint_lp,
    solve_equilibrium,
    solve_joint_lp,
    verify_lp_pair,
)
from tpass.game import TpassGame, is_equilibrium, random_tpass
from tpass.oracle import cross_check, enumerate_equilibria

from gamegen import random_games, random_simplex

TOL = 1e-8


@contextmanager
def criterion(num, name):
    try:
        yield
    except BaseException:
        print(f"[acceptance {num}] {name}: FAIL")
        raise
    print(f"[acceptance {num}] {name}: PASS")


@pytest.fixture(scope="module")
def suite():
    """1000 deterministic random games, 2 <= m, n <= 8, entries in [-1, 1]."""
    return random_games(1000, seed_base=1_000_000, min_dim=2, max_dim=8, rng_seed=0)


def test_criterion_1_demo_game():
    with criterion(1, "2x2 dilemma demo"):
        game = dilemma()
        elapsed = min(
            _timed(lambda: solve_equilibrium(game))[1] for _ in range(3)
        )
        sol = solve_equilibrium(game)
        assert np.abs(sol.p.weights - [1.0, 0.0]).max() <= 1e-9
        assert np.abs(sol.q.weights - [1.0, 0.0]).max() <= 1e-9
        assert abs(sol.alpha - 0.5) <= 1e-9
        assert abs(sol.beta - 0.5) <= 1e-9
        summary = dilemma_summary()
        assert summary["pareto_cell"]["payoffs"] == [0.75, 0.75]
        assert elapsed < 0.010, f"demo solve took {elapsed * 1e3:.2f} ms"


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_2_print_inconsistency_detected():
    with criterion(2, "near-miss matrices are non-separable"):
        ok, residual = is_separable_sum(dilemma_near_miss())
        assert not ok
        assert residual == 1.5


def test_criterion_3_equilibrium_existence_suite(suite):
    with criterion(3, "primal/dual LP property suite (1000 games)"):
        start = time.perf_counter()
        for game in suite:
            sol = solve_equilibrium(game, TOL)
            assert is_equilibrium(game, sol.p, sol.q, TOL).is_equilibrium
            assert sol.slackness_residual <= TOL
            dual_value = lp.solve(build_dual_lp(game)).objective_value
            assert abs(sol.lp_value - dual_value) <= TOL
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"suite took {elapsed:.1f} s"


def test_criterion_4_joint_lp_zero_optimum(suite):
    with criterion(4, "joint LP optimum is zero (1000 games)"):
        for game in suite:
            sol, value = solve_joint_lp(game, TOL)
            assert abs(value) <= TOL
            assert is_equilibrium(game, sol.p, sol.q, TOL).is_equilibrium


def test_criterion_5_joint_certificate_equivalence(suite):
    with criterion(5, "joint certificate == best response (10000 triples)"):
        rng = np.random.default_rng(555)
        disagreements = 0
        checked = 0
        for k, game in enumerate(suite):
            pairs = [
                (random_simplex(rng, game.m), random_simplex(rng, game.n))
                for _ in range(9)
            ]
            vertex_p = np.zeros(game.m)
            vertex_p[int(rng.integers(game.m))] = 1.0
            vertex_q = np.zeros(game.n)
            vertex_q[int(rng.integers(game.n))] = 1.0
            pairs.append((vertex_p, vertex_q))
            if k % 5 == 0:
                sol = solve_equilibrium(game, TOL)
                pairs.append((sol.p.weights, sol.q.weights))
            for p, q in pairs:
                a = is_equilibrium(game, p, q, TOL).is_equilibrium
                b = check_joint_lp(game, p, q, TOL)
                disagreements += a != b
                checked += 1
        assert checked >= 10_000
        assert disagreements == 0


def test_criterion_6_lp_pair_certification():
    with criterion(6, "equilibria solve the LP pair, non-equilibria do not"):
        rng = np.random.default_rng(666)
        games = random_games(100, seed_base=2_000_000, min_dim=2, max_dim=4, rng_seed=6)
        for game in games:
            for p, q in enumerate_equilibria(compose(game), TOL):
                assert verify_lp_pair(game, p, q, TOL).is_equilibrium
            rejected = 0
            while rejected < 100:
                p = random_simplex(rng, game.m)
                q = random_simplex(rng, game.n)
                if is_equilibrium(game, p, q, TOL).is_equilibrium:
                    continue
                assert not verify_lp_pair(game, p, q, TOL).is_equilibrium
                rejected += 1


def test_criterion_7_oracle_agreement():
    with criterion(7, "oracle confirms the LP solution (500 games)"):
        games = random_games(500, seed_base=3_000_000, min_dim=2, max_dim=4, rng_seed=7)
        confirmed = sum(
            cross_check(game, solve_equilibrium(game, TOL), TOL) for game in games
        )
        assert confirmed == len(games)


def test_criterion_8_zero_sum_reduction():
    with criterion(8, "zero-sum reduction matches the matrix-game value"):
        pennies = TpassGame([[1.0, -1.0], [-1.0, 1.0]], [0.0, 0.0], [0.0, 0.0])
        sol = solve_equilibrium(pennies)
        assert abs(sol.alpha) <= 1e-9
        assert abs(sol.alpha + sol.beta) <= 1e-9
        assert np.abs(sol.p.weights - 0.5).max() <= 1e-9
        assert np.abs(sol.q.weights - 0.5).max() <= 1e-9

        def closed_form_value(A):
            lower = A.min(axis=1).max()
            upper = A.max(axis=0).min()
            if upper <= lower + 1e-12:  # saddle point
                return 0.5 * (lower + upper)
            a, b, c, d = A[0, 0], A[0, 1], A[1, 0], A[1, 1]
            return (a * d - b * c) / (a + d - b - c)

        for k in range(100):
            base = random_tpass(2, 2, -1.0, 1.0, seed=4_000_000 + k)
            game = TpassGame(base.A, [0.0, 0.0], [0.0, 0.0])
            sol = solve_equilibrium(game)
            assert abs(sol.alpha + sol.beta) <= 1e-9
            assert abs(sol.alpha - closed_form_value(game.A)) <= TOL


def test_criterion_9_decomposition_round_trip(suite):
    with criterion(9, "decomposition round trip and perturbation rejection"):
        for game in suite:
            bg = compose(game)
            back = compose(decompose(bg).game)
            assert np.abs(back.B - bg.B).max() <= 1e-12
            assert np.abs(back.C - bg.C).max() <= 1e-12
        rng = np.random.default_rng(999)
        for game in suite[:100]:
            bg = compose(game)
            B = np.array(bg.B)
            B[rng.integers(game.m), rng.integers(game.n)] += 1e-3
            ok, residual = is_separable_sum(BimatrixGame(B, bg.C), tol=1e-9)
            assert not ok
            assert residual >= 1e-4
