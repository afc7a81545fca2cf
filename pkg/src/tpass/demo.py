"""Built-in demonstration game: a 2x2 separable-sum dilemma.

The triplet A = [[0, 1], [-1, 0]], pi = rho = (1/2, 3/4) composes to

    B = [[ 1/2, 3/2],      C = [[1/2, -1/4],
         [-1/4, 3/4]]           [3/2,  3/4]]

where strategy 1 strictly dominates for both players, so the unique
equilibrium is the pure pair ((1,0), (1,0)) paying (1/2, 1/2), while the
cell (2, 2) pays (3/4, 3/4), better for both players.  Reading strategy
1 as defection and strategy 2 as cooperation gives the familiar
prisoner's-dilemma tension inside a separable-sum game.

A "near-miss" variant is also provided for negative testing: setting
B[1][2] and C[2][1] to 3/4 produces a superficially similar pair whose
payoff sum is NOT additively separable (tetrad residual 3/2).
"""

from __future__ import annotations

from .decompose import BimatrixGame, is_separable_sum
from .equilibrium import solve_equilibrium
from .game import TpassGame, build_payoff_matrices, pure_payoffs
from .oracle import cross_check

DEMO_NAMES = ("pd",)


def dilemma() -> TpassGame:
    """The 2x2 dilemma game (A, pi, rho) described in the module docstring."""
    return TpassGame([[0.0, 1.0], [-1.0, 0.0]], [0.5, 0.75], [0.5, 0.75])


def dilemma_near_miss() -> BimatrixGame:
    """The non-separable variant with B[1][2] = C[2][1] = 3/4."""
    return BimatrixGame([[0.5, 0.75], [-0.25, 0.75]], [[0.5, -0.25], [0.75, 0.75]])


def dilemma_summary() -> dict:
    """Everything the demo report shows, computed live."""
    game = dilemma()
    B, C = build_payoff_matrices(game)
    sol = solve_equilibrium(game)
    near = dilemma_near_miss()
    near_ok, near_residual = is_separable_sum(near)
    return {
        "name": "pd",
        "A": game.A.tolist(),
        "pi": game.pi.tolist(),
        "rho": game.rho.tolist(),
        "B": B.tolist(),
        "C": C.tolist(),
        "equilibrium": {
            "p": list(sol.p.weights),
            "q": list(sol.q.weights),
            "alpha": sol.alpha,
            "beta": sol.beta,
            "oracle_confirmed": cross_check(game, sol),
        },
        "pareto_cell": {
            "row": 2,
            "col": 2,
            "payoffs": list(pure_payoffs(game, 2, 2)),
        },
        "near_miss": {
            "B": near.B.tolist(),
            "C": near.C.tolist(),
            "separable": near_ok,
            "tetrad_residual": near_residual,
        },
    }
