"""General-form linear programs and a dense two-phase simplex solver.

The model container accepts maximize or minimize objectives, ``<=``,
``=`` and ``>=`` rows, and per-variable bound classes (nonnegative or
free).  Problems in this package are tiny (tens of variables), so the
solver works on a dense tableau and favors transparency over sparse
machinery.

Solver design:

* Free variables enter the tableau as a split ``x = x+ - x-``; reported
  solutions recombine the halves.
* Rows are normalized to nonnegative right-hand sides; ``<=`` rows get a
  slack, ``>=`` rows a surplus plus an artificial, ``=`` rows an
  artificial.  Phase 1 maximizes minus the artificial sum; a nonzero
  optimum means infeasible.
* Artificial columns stay in the tableau at zero cost through phase 2
  (barred from re-entering the basis) so no column reindexing is needed.
  Basic artificials left over from phase 1 are driven out by degenerate
  pivots; rows that cannot be pivoted are redundant and are dropped with
  a zero dual.
* Pricing is Dantzig's rule with a stability twist: among the most
  favorable columns, one whose ratio-test pivot is not vanishingly small
  relative to its column is preferred, which avoids the roundoff blowup
  of near-degenerate pivots.  After ``50 * n_rows`` pivots without
  objective progress the solver switches permanently to Bland's rule
  (pure, unstabilized), which guarantees termination on degenerate
  (cycling) instances.
* The tableau only decides which basis is optimal.  The reported ``x``
  and duals are recomputed from that basis by a fresh factorization of
  the original data (``B x_B = b`` and ``B' y = c_B``), so accumulated
  tableau roundoff never leaks into results.
* Every "optimal" result is re-verified against the original model:
  primal feasibility and dual feasibility within ``tol_feas`` and a
  primal-dual objective gap within ``tol_gap``, which together certify
  optimality.  A violation raises :class:`SolverFailure` rather than
  returning a silently wrong status.

Dual sign convention (matching :func:`dualize`): for a maximize problem
``<=`` rows have nonnegative multipliers and ``>=`` rows nonpositive
ones; for a minimize problem the signs swap; equality rows are free
either way.  The dual objective is ``b . y`` and equals the primal
objective at optimality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, SolverFailure

MAX = "max"
MIN = "min"
LE = "<="
EQ = "="
GE = ">="
NONNEG = "nonneg"
FREE = "free"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

TOL_FEAS = 1e-9
TOL_GAP = 1e-8
PIVOT_EPS = 1e-11

_RELATIONS = (LE, EQ, GE)
_BOUND_KINDS = (NONNEG, FREE)


@dataclass(frozen=True, eq=False)
class Constraint:
    """One linear row ``coeffs . x  <rel>  rhs``."""

    coeffs: np.ndarray
    rel: str
    rhs: float

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise InputError(f"constraint coefficients must be a 1-d vector, got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise InputError("constraint coefficients contain non-finite entries")
        if self.rel not in _RELATIONS:
            raise InputError(f"relation must be one of {_RELATIONS}, got {self.rel!r}")
        rhs = float(self.rhs)
        if not np.isfinite(rhs):
            raise InputError("constraint rhs must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True, eq=False)
class LpModel:
    """A general-form linear program.

    ``bounds`` gives each variable's class, ``"nonneg"`` or ``"free"``;
    ``None`` means all nonnegative.  Constraints may be given as
    :class:`Constraint` values or ``(coeffs, rel, rhs)`` triples.
    """

    sense: str
    objective: np.ndarray
    constraints: tuple[Constraint, ...]
    bounds: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.sense not in (MAX, MIN):
            raise InputError(f"sense must be '{MAX}' or '{MIN}', got {self.sense!r}")
        objective = np.array(self.objective, dtype=float)
        if objective.ndim != 1 or objective.size == 0:
            raise InputError(f"objective must be a 1-d vector, got shape {objective.shape}")
        if not np.all(np.isfinite(objective)):
            raise InputError("objective contains non-finite entries")
        objective.setflags(write=False)
        n = objective.shape[0]
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints
        )
        for k, con in enumerate(cons):
            if con.coeffs.shape[0] != n:
                raise InputError(
                    f"constraint {k + 1} has {con.coeffs.shape[0]} coefficients, expected {n}"
                )
        bounds = tuple(self.bounds) if self.bounds is not None else (NONNEG,) * n
        if len(bounds) != n:
            raise InputError(f"bounds has length {len(bounds)}, expected {n}")
        for b in bounds:
            if b not in _BOUND_KINDS:
                raise InputError(f"variable bound must be one of {_BOUND_KINDS}, got {b!r}")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "bounds", bounds)

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]

    @property
    def n_rows(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Solve result.

    ``x`` and ``duals`` are present only when ``status == "optimal"``.
    ``objective_value`` is nan for infeasible models and +/-inf for
    unbounded ones (sign follows the model's sense).  ``duals`` holds
    one multiplier per constraint, in model order, under the sign
    convention documented in the module docstring.
    """

    status: str
    x: np.ndarray | None
    objective_value: float
    duals: np.ndarray | None
    iterations: int


def constraint_matrix(model: LpModel) -> tuple[np.ndarray, np.ndarray]:
    """The stacked ``(M, b)`` of a model's constraint rows."""
    if model.n_rows == 0:
        return np.zeros((0, model.n_vars)), np.zeros(0)
    M = np.vstack([c.coeffs for c in model.constraints])
    b = np.array([c.rhs for c in model.constraints])
    return M, b


class _Tableau:
    """Mutable solver state; private to a single :func:`solve` call."""

    def __init__(self, model: LpModel, tol_feas: float, tol_gap: float, pivot_eps: float):
        self.model = model
        self.tol_feas = tol_feas
        self.tol_gap = tol_gap
        self.pivot_eps = pivot_eps
        self.rc_tol = max(10.0 * pivot_eps, tol_feas / 10.0)
        self.maximize = model.sense == MAX
        self.iterations = 0

        m, n = model.n_rows, model.n_vars
        c = model.objective if self.maximize else -model.objective

        # Split free variables.
        pos_col = np.zeros(n, dtype=int)
        neg_col = np.full(n, -1, dtype=int)
        k = 0
        for j, kind in enumerate(model.bounds):
            pos_col[j] = k
            k += 1
            if kind == FREE:
                neg_col[j] = k
                k += 1
        n_struct = k
        self.pos_col = pos_col
        self.neg_col = neg_col

        # Row normalization: nonnegative rhs, with the applied sign kept
        # so original duals can be recovered.
        sigma = np.ones(m)
        rows = np.zeros((m, n_struct))
        rhs = np.zeros(m)
        rels = []
        for i, con in enumerate(model.constraints):
            a, b, rel = con.coeffs, con.rhs, con.rel
            if b < 0:
                a, b = -a, -b
                sigma[i] = -1.0
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
            rows[i, pos_col] = a
            split = neg_col >= 0
            rows[i, neg_col[split]] = -a[split]
            rhs[i] = b
            rels.append(rel)
        self.sigma = sigma

        n_slack = sum(1 for r in rels if r != EQ)
        n_art = sum(1 for r in rels if r != LE)
        total = n_struct + n_slack + n_art
        T = np.zeros((m + 1, total + 1))
        T[:m, :n_struct] = rows
        T[:m, -1] = rhs

        basis: list[int] = []
        col = n_struct
        art_first = n_struct + n_slack
        art = art_first
        for i, rel in enumerate(rels):
            if rel == LE:
                T[i, col] = 1.0
                basis.append(col)
                col += 1
            elif rel == GE:
                T[i, col] = -1.0
                col += 1
                T[i, art] = 1.0
                basis.append(art)
                art += 1
            else:
                T[i, art] = 1.0
                basis.append(art)
                art += 1

        self.T = T
        self.basis = basis
        self.row_ids = list(range(m))
        # Pristine standard-form data for the final refactorization.
        self.A0 = T[:m, :-1].copy()
        self.b0 = T[:m, -1].copy()
        self.artificial = np.zeros(total, dtype=bool)
        self.artificial[art_first:] = True
        self.enterable = ~self.artificial

        self.phase1_costs = np.where(self.artificial, -1.0, 0.0)
        costs2 = np.zeros(total)
        costs2[pos_col] = c
        costs2[neg_col[neg_col >= 0]] = -c[neg_col >= 0]
        self.phase2_costs = costs2
        self.has_artificials = n_art > 0

    # -- tableau mechanics ------------------------------------------------

    def _price_out(self, costs: np.ndarray) -> None:
        T = self.T
        cb = costs[self.basis]
        T[-1, :-1] = cb @ T[:-1, :-1] - costs
        T[-1, -1] = cb @ T[:-1, -1]

    def _pivot(self, row: int, col: int) -> None:
        T = self.T
        piv = T[row, col]
        if abs(piv) < self.pivot_eps:
            raise SolverFailure(
                "pivot element below pivot_eps", pivot=piv, iterations=self.iterations
            )
        T[row] /= piv
        column = T[:, col].copy()
        column[row] = 0.0
        T -= np.outer(column, T[row])
        # Scrub roundoff in the pivot column.
        T[:, col] = 0.0
        T[row, col] = 1.0
        self.iterations += 1

    def _ratio_row(self, col: int, bland: bool) -> tuple[str, int]:
        """Leaving row for an entering column: (kind, row) where kind is
        'ok', 'unbounded' or 'breakdown'."""
        T = self.T
        column = T[:-1, col]
        positive = column > self.pivot_eps
        if not positive.any():
            if (column > 0).any():
                return "breakdown", -1
            return "unbounded", -1
        ratios = np.full(column.shape[0], np.inf)
        ratios[positive] = T[:-1, -1][positive] / column[positive]
        theta = ratios.min()
        ties = np.nonzero(ratios == theta)[0]
        if bland:
            row = int(ties[np.argmin([self.basis[t] for t in ties])])
        else:
            # stabilizing tie-break: the largest pivot among exact ties
            row = int(ties[np.argmax(np.abs(column[ties]))])
        return "ok", row

    # How many favorable columns the stabilized Dantzig scan examines,
    # and how small a pivot must be (relative to its column) before a
    # better-conditioned alternative is preferred.
    _SCAN_LIMIT = 8
    _STABLE_REL = 1e-7

    def _choose_dantzig(self, phase: int) -> tuple[int, int] | str:
        T = self.T
        reduced = np.where(self.enterable, T[-1, :-1], np.inf)
        order = np.argsort(reduced, kind="stable")
        fallback = None
        saw_breakdown = False
        for rank in range(order.size):
            col = int(order[rank])
            if reduced[col] >= -self.rc_tol:
                break
            kind, row = self._ratio_row(col, bland=False)
            if kind == "unbounded":
                return UNBOUNDED
            if kind == "breakdown":
                saw_breakdown = True
                continue
            pivot = abs(T[row, col])
            column_scale = float(np.abs(T[:-1, col]).max())
            if pivot >= self._STABLE_REL * max(1.0, column_scale):
                return col, row
            if fallback is None:
                fallback = (col, row)
            if rank + 1 >= self._SCAN_LIMIT and fallback is not None:
                # bounded scan: settle for the best seen so far
                return fallback
        if fallback is not None:
            return fallback
        if saw_breakdown:
            raise SolverFailure(
                "pivot breakdown: all candidate pivots below pivot_eps",
                phase=phase,
                iterations=self.iterations,
            )
        return OPTIMAL

    def _pivot_loop(self, phase: int) -> str:
        T = self.T
        stall_limit = 50 * max(1, T.shape[0] - 1)
        hard_cap = 10_000 + 200 * (T.shape[0] + T.shape[1])
        bland = False
        best = T[-1, -1]
        stall = 0
        while True:
            if bland:
                reduced = T[-1, :-1]
                favorable = np.nonzero(self.enterable & (reduced < -self.rc_tol))[0]
                if favorable.size == 0:
                    return OPTIMAL
                col = int(favorable[0])
                kind, row = self._ratio_row(col, bland=True)
                if kind == "unbounded":
                    return UNBOUNDED
                if kind == "breakdown":
                    raise SolverFailure(
                        "pivot breakdown: all candidate pivots below pivot_eps",
                        phase=phase,
                        column=col,
                        iterations=self.iterations,
                    )
            else:
                choice = self._choose_dantzig(phase)
                if choice == OPTIMAL:
                    return OPTIMAL
                if choice == UNBOUNDED:
                    return UNBOUNDED
                col, row = choice
            self._pivot(row, col)
            self.basis[row] = col

            value = T[-1, -1]
            if value > best + 1e-12:
                best = value
                stall = 0
            else:
                stall += 1
                if stall > stall_limit:
                    bland = True
            if self.iterations > hard_cap:
                raise SolverFailure(
                    "iteration limit exceeded", phase=phase, iterations=self.iterations
                )

    def _drive_out_artificials(self) -> None:
        T = self.T
        drop = []
        for ri in range(len(self.basis)):
            if not self.artificial[self.basis[ri]]:
                continue
            row = T[ri, :-1]
            candidates = np.nonzero(self.enterable & (np.abs(row) > self.pivot_eps))[0]
            if candidates.size:
                # rhs is zero here, so any pivot is degenerate-feasible;
                # take the largest for stability
                col = int(candidates[np.argmax(np.abs(row[candidates]))])
                self._pivot(ri, col)
                self.basis[ri] = col
            else:
                drop.append(ri)  # redundant row: zero outside artificials
        if drop:
            self.T = np.delete(self.T, drop, axis=0)
            keep = [i for i in range(len(self.basis)) if i not in drop]
            self.basis = [self.basis[i] for i in keep]
            self.row_ids = [self.row_ids[i] for i in keep]

    # -- result assembly ---------------------------------------------------

    def _extract(self) -> LpSolution:
        """Recompute x and duals from the final basis and certify them.

        The basis matrix is rebuilt from the pristine standard-form data,
        so the reported numbers carry one factorization's worth of error
        rather than the whole pivot history's.
        """
        model = self.model
        values = np.zeros(self.A0.shape[1])
        duals_internal = np.zeros(model.n_rows)
        if self.basis:
            base = self.A0[self.row_ids][:, self.basis]
            try:
                values[self.basis] = np.linalg.solve(base, self.b0[self.row_ids])
                duals_internal[self.row_ids] = np.linalg.solve(
                    base.T, self.phase2_costs[self.basis]
                )
            except np.linalg.LinAlgError:
                raise SolverFailure(
                    "final basis is numerically singular", iterations=self.iterations
                ) from None
        x = values[self.pos_col].copy()
        split = self.neg_col >= 0
        x[split] -= values[self.neg_col[split]]

        duals = duals_internal * self.sigma
        if not self.maximize:
            duals = -duals

        objective_value = float(model.objective @ x)
        self._verify(x, duals, objective_value)
        x.setflags(write=False)
        duals.setflags(write=False)
        return LpSolution(OPTIMAL, x, objective_value, duals, self.iterations)

    def _verify(self, x: np.ndarray, duals: np.ndarray, objective_value: float) -> None:
        """Certify optimality: primal feasible, dual feasible, zero gap."""
        model = self.model
        worst = 0.0
        for con in model.constraints:
            gap = float(con.coeffs @ x - con.rhs)
            scale = max(1.0, abs(con.rhs))
            if con.rel == LE:
                viol = max(gap, 0.0)
            elif con.rel == GE:
                viol = max(-gap, 0.0)
            else:
                viol = abs(gap)
            worst = max(worst, viol / scale)
        for j, kind in enumerate(model.bounds):
            if kind == NONNEG:
                worst = max(worst, -float(x[j]))
        if worst > self.tol_feas:
            raise SolverFailure(
                "optimal basis fails the primal feasibility re-check",
                violation=worst,
                iterations=self.iterations,
            )

        M, b = constraint_matrix(model)
        worst_dual = 0.0
        if model.n_rows:
            # multiplier sign conditions per relation
            for i, con in enumerate(model.constraints):
                if con.rel == EQ:
                    continue
                sign = 1.0 if con.rel == LE else -1.0
                if not self.maximize:
                    sign = -sign
                worst_dual = max(worst_dual, -sign * float(duals[i]))
            reduced = model.objective - M.T @ duals
            for j, kind in enumerate(model.bounds):
                scale = max(1.0, abs(float(model.objective[j])))
                if kind == FREE:
                    viol = abs(float(reduced[j]))
                elif self.maximize:
                    viol = max(float(reduced[j]), 0.0)
                else:
                    viol = max(-float(reduced[j]), 0.0)
                worst_dual = max(worst_dual, viol / scale)
        if worst_dual > self.tol_feas:
            raise SolverFailure(
                "optimal basis fails the dual feasibility re-check",
                violation=worst_dual,
                iterations=self.iterations,
            )

        dual_objective = float(duals @ b) if b.size else 0.0
        gap = abs(objective_value - dual_objective)
        if gap > self.tol_gap * max(1.0, abs(objective_value)):
            raise SolverFailure(
                "primal and dual objectives disagree",
                gap=gap,
                primal=objective_value,
                dual=dual_objective,
                iterations=self.iterations,
            )

    # -- driver -------------------------------------------------------------

    def run(self) -> LpSolution:
        if self.has_artificials:
            self._price_out(self.phase1_costs)
            status = self._pivot_loop(phase=1)
            if status != OPTIMAL:
                # Phase-1 objective is bounded above by zero.
                raise SolverFailure(
                    f"phase 1 terminated {status}", iterations=self.iterations
                )
            if self.T[-1, -1] < -self.tol_feas:
                return LpSolution(INFEASIBLE, None, float("nan"), None, self.iterations)
            self._drive_out_artificials()
        self._price_out(self.phase2_costs)
        status = self._pivot_loop(phase=2)
        if status == UNBOUNDED:
            value = float("inf") if self.maximize else float("-inf")
            return LpSolution(UNBOUNDED, None, value, None, self.iterations)
        return self._extract()


def solve(
    model: LpModel,
    *,
    tol_feas: float = TOL_FEAS,
    tol_gap: float = TOL_GAP,
    pivot_eps: float = PIVOT_EPS,
) -> LpSolution:
    """Solve a model with the two-phase simplex method.

    Deterministic: the same model always follows the same pivot path and
    returns the same solution and iteration count.  Raises
    :class:`SolverFailure` on numerical breakdown instead of returning
    an untrustworthy status.
    """
    return _Tableau(model, tol_feas, tol_gap, pivot_eps).run()


def dualize(model: LpModel) -> LpModel:
    """The standard LP dual of ``model``.

    * maximize <-> minimize;
    * one dual variable per primal row: free for ``=`` rows, nonnegative
      otherwise (``>=`` rows of a max problem and ``<=`` rows of a min
      problem are negated first so their multipliers stay nonnegative);
    * one dual constraint per primal variable: an equality for free
      variables, an inequality (``>=`` when dualizing a max problem,
      ``<=`` for a min problem) for nonnegative ones.

    ``dualize(dualize(m))`` is equivalent to ``m`` up to these sign
    normalizations.
    """
    if model.n_rows == 0:
        raise InputError("cannot dualize a model with no constraints")
    flip_rel = GE if model.sense == MAX else LE
    rows = []
    for con in model.constraints:
        if con.rel == flip_rel:
            rows.append(Constraint(-con.coeffs, LE if flip_rel == GE else GE, -con.rhs))
        else:
            rows.append(con)
    dual_sense = MIN if model.sense == MAX else MAX
    dual_objective = np.array([row.rhs for row in rows])
    dual_bounds = tuple(FREE if row.rel == EQ else NONNEG for row in rows)
    M = np.vstack([row.coeffs for row in rows])
    var_rel = GE if model.sense == MAX else LE
    dual_constraints = tuple(
        Constraint(M[:, j], EQ if model.bounds[j] == FREE else var_rel, model.objective[j])
        for j in range(model.n_vars)
    )
    return LpModel(dual_sense, dual_objective, dual_constraints, dual_bounds)


def check_complementary_slackness(
    model: LpModel, sol: LpSolution, tol: float = TOL_GAP
) -> tuple[bool, float]:
    """Largest complementary-slackness product at a solved optimum.

    Checks ``|dual_i * slack_i|`` over constraints and
    ``|x_j * reduced_cost_j|`` over variables, where
    ``reduced_cost = objective - M^T duals``.  Returns ``(ok, residual)``
    with ``ok = residual <= tol``.
    """
    if sol.status != OPTIMAL:
        raise InputError(f"complementary slackness needs an optimal solution, got {sol.status!r}")
    M, b = constraint_matrix(model)
    slacks = b - M @ sol.x if b.size else np.zeros(0)
    residual = 0.0
    if slacks.size:
        residual = float(np.abs(sol.duals * slacks).max())
    reduced = model.objective - (M.T @ sol.duals if b.size else 0.0)
    residual = max(residual, float(np.abs(sol.x * reduced).max()))
    return residual <= tol, residual
