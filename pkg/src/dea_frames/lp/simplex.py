"""
Dense tableau simplex solver with primal (two-phase) and dual pivoting.

Both algorithms work on a standard form with non-negative variables that is derived from the LP's bounds.
Dantzig's rule is used by default; after too many consecutive degenerate pivots the solver switches to
Bland's rule for the rest of the solve.
"""

import logging

import numpy as np

from dea_frames.lib.tolerances import DEFAULT_TOLERANCES

from .problem import Algorithm, LpSolution, Relation, Sense, Status


# Steps smaller than this count as degenerate for the stall counter
_DEGENERATE_STEP = 1e-12
# Relative slack when collecting tied ratios
_RATIO_TIE = 1e-12
# Number of rejected (too small) pivot columns/rows tolerated within one solve
_MAX_PIVOT_REJECTIONS = 50


class SolverError(Exception):
    """
    Base class for errors of the simplex solver.
    """


class NumericalInstabilityError(SolverError):
    """
    Pivot elements repeatedly fell below the pivot tolerance or an "optimal" solution failed its residual
    checks, i.e. the LP is too ill-conditioned for the solver.
    """


class IterationLimitError(SolverError):
    """
    The solver exceeded its pivot limit.
    """


class InternalSolverError(SolverError):
    """
    The solver returned a status which is impossible for the model that was solved, or a solution failed
    a consistency check of its caller.
    """


class _StandardForm:
    """
    "min cost·x s.t. matrix·x (relations) rhs, x >= 0" derived from an LP through variable substitutions:
    finite lower bounds are shifted to 0, variables only bounded above get reflected, free variables are
    split and finite upper bounds become additional "<=" rows behind the LP's own rows.
    """

    def __init__(self, lp):
        self.lp = lp
        self.num_lp_rows = lp.num_rows
        sign = -1.0 if lp.sense == Sense.MAX else 1.0

        if lp.has_default_bounds():
            self.transform = None
            self.offset = None
            self.matrix = lp.matrix
            self.rhs = lp.rhs
            self.cost = sign * lp.objective
            self.relations = list(lp.relations)
            return

        columns = []
        offset = np.zeros(lp.num_vars)
        bound_rows = []
        for j in range(lp.num_vars):
            lower, upper = lp.lower[j], lp.upper[j]
            if np.isfinite(lower):
                offset[j] = lower
                columns.append((j, 1.0))
                if np.isfinite(upper):
                    bound_rows.append((len(columns) - 1, upper - lower))
            elif np.isfinite(upper):
                offset[j] = upper
                columns.append((j, -1.0))
            else:
                columns.append((j, 1.0))
                columns.append((j, -1.0))

        transform = np.zeros((lp.num_vars, len(columns)))
        for k, (j, coef) in enumerate(columns):
            transform[j, k] = coef

        matrix = lp.matrix @ transform
        rhs = lp.rhs - lp.matrix @ offset
        if bound_rows:
            extra = np.zeros((len(bound_rows), len(columns)))
            extra_rhs = np.empty(len(bound_rows))
            for row, (col, width) in enumerate(bound_rows):
                extra[row, col] = 1.0
                extra_rhs[row] = width
            matrix = np.vstack((matrix, extra))
            rhs = np.concatenate((rhs, extra_rhs))

        self.transform = transform
        self.offset = offset
        self.matrix = matrix
        self.rhs = rhs
        self.cost = sign * (lp.objective @ transform)
        self.relations = list(lp.relations) + [Relation.LE] * len(bound_rows)

    @property
    def num_rows(self):
        return self.matrix.shape[0]

    @property
    def num_vars(self):
        return self.matrix.shape[1]

    def to_original(self, x_std):
        if self.transform is None:
            return x_std
        return self.offset + self.transform @ x_std


class _Tableau:
    """
    Dense simplex tableau: rows 0..m-1 hold B^-1·[A | b], the last row holds the reduced costs and -z.
    """

    def __init__(self, table, basis, allowed, tolerances, bland, max_iterations):
        self.table = table
        self.basis = basis
        self.allowed = allowed
        self.tol = tolerances
        self.bland = bland
        self.bland_activated = False
        self.max_iterations = max_iterations
        self.iterations = 0
        self.degenerate_streak = 0
        self.rejections = 0

    @property
    def num_rows(self):
        return self.table.shape[0] - 1

    def set_objective(self, cost):
        rows = self.table[:-1]
        basic_cost = cost[self.basis]
        self.table[-1, :-1] = cost - basic_cost @ rows[:, :-1]
        self.table[-1, -1] = -(basic_cost @ rows[:, -1])

    def pivot(self, row, col):
        if self.iterations >= self.max_iterations:
            raise IterationLimitError(f'No optimum after {self.iterations} pivots')

        table = self.table
        table[row] /= table[row, col]
        factors = table[:, col].copy()
        factors[row] = 0.0
        table -= np.outer(factors, table[row])
        table[:, col] = 0.0
        table[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1

    def _note_step(self, step):
        if step > _DEGENERATE_STEP:
            self.degenerate_streak = 0
            return

        self.degenerate_streak += 1
        if not self.bland and self.degenerate_streak > self.tol.stall_limit:
            logging.debug("Simplex stalled for %d degenerate pivots, switching to Bland's rule",
                          self.degenerate_streak)
            self.bland = True
            self.bland_activated = True

    def _reject_pivot(self):
        self.rejections += 1
        if self.rejections > _MAX_PIVOT_REJECTIONS:
            raise NumericalInstabilityError(f'Pivot elements below {self.tol.pivot} in '
                                            f'{self.rejections} attempts')

    def run_primal(self):
        """
        Primal simplex iterations from a primal feasible basis.

        Returns:
            Status.OPTIMAL or Status.UNBOUNDED.
        """

        table = self.table
        num_rows = self.num_rows

        while True:
            reduced = table[-1, :-1]
            candidates = np.flatnonzero(self.allowed & (reduced < -self.tol.feas))
            if candidates.size == 0:
                return Status.OPTIMAL
            if not self.bland:
                candidates = candidates[np.argsort(reduced[candidates], kind='stable')]

            for col in candidates:
                column = table[:num_rows, col]
                eligible = np.flatnonzero(column > self.tol.pivot)
                if eligible.size == 0:
                    if np.any(column > 0.0):
                        self._reject_pivot()
                        continue
                    return Status.UNBOUNDED

                rhs = np.maximum(table[eligible, -1], 0.0)
                ratios = rhs / column[eligible]
                best = ratios.min()
                tied = eligible[ratios <= best + _RATIO_TIE * max(1.0, best)]
                if self.bland:
                    row = tied[np.argmin(self.basis[tied])]
                else:
                    row = tied[np.argmax(column[tied])]

                self._note_step(best)
                self.pivot(row, col)
                break
            else:
                raise NumericalInstabilityError('All entering candidates have pivot elements below '
                                                f'{self.tol.pivot}')

    def run_dual(self):
        """
        Dual simplex iterations from a dual feasible basis (all reduced costs non-negative).

        Returns:
            Status.OPTIMAL once the basis is primal feasible or Status.INFEASIBLE if a row proves that no
            feasible solution exists.
        """

        table = self.table
        num_rows = self.num_rows

        while True:
            rhs = table[:num_rows, -1]
            infeasible = np.flatnonzero(rhs < -self.tol.feas)
            if infeasible.size == 0:
                return Status.OPTIMAL
            if self.bland:
                infeasible = infeasible[np.argsort(self.basis[infeasible], kind='stable')]
            else:
                infeasible = infeasible[np.argsort(rhs[infeasible], kind='stable')]

            for row in infeasible:
                alpha = table[row, :-1]
                eligible = np.flatnonzero(self.allowed & (alpha < -self.tol.pivot))
                if eligible.size == 0:
                    if np.any(self.allowed & (alpha < 0.0)):
                        self._reject_pivot()
                        continue
                    return Status.INFEASIBLE

                reduced = np.maximum(table[-1, eligible], 0.0)
                ratios = reduced / -alpha[eligible]
                best = ratios.min()
                tied = eligible[ratios <= best + _RATIO_TIE * max(1.0, best)]
                if self.bland:
                    col = tied[0]
                else:
                    col = tied[np.argmin(alpha[tied])]

                self._note_step(best)
                self.pivot(row, col)
                break
            else:
                raise NumericalInstabilityError('All leaving candidates have pivot elements below '
                                                f'{self.tol.pivot}')

    def values(self, num_columns):
        x = np.zeros(num_columns)
        basic = self.basis < num_columns
        x[self.basis[basic]] = self.table[:-1, -1][basic]
        return x


class SimplexSolver:
    """
    Reusable solver configuration.

    Args:
        algorithm: Default pivoting scheme, `Algorithm.PRIMAL` or `Algorithm.DUAL`.
        tolerances: A `lib.tolerances.Tolerances` instance.
        bland: Use Bland's rule from the first pivot instead of only after stalling.
        carry_basis: Try the optimal basis of the previous solve as starting basis of the next one (primal
                     algorithm only, used when the standard forms have the same shape).
    """

    def __init__(self, algorithm=Algorithm.PRIMAL, tolerances=DEFAULT_TOLERANCES, bland=False,
                 carry_basis=False):
        self.algorithm = Algorithm(algorithm)
        self.tolerances = tolerances
        self.bland = bland
        self.carry_basis = carry_basis
        self._last_basis = None

    def solve(self, lp, algorithm=None, warm_start=None):
        """
        Solves `lp` and returns an LpSolution.

        Raises:
            NumericalInstabilityError, IterationLimitError
        """

        algorithm = self.algorithm if algorithm is None else Algorithm(algorithm)
        if warm_start is None and self.carry_basis:
            warm_start = self._last_basis

        std = _StandardForm(lp)
        if algorithm == Algorithm.PRIMAL:
            solution = self._solve_primal(std, warm_start)
        else:
            solution = self._solve_dual(std)

        if self.carry_basis and solution.is_optimal:
            self._last_basis = solution.basis
        return solution

    def _max_iterations(self, table):
        if self.tolerances.max_iterations is not None:
            return self.tolerances.max_iterations
        return 50 * sum(table.shape) + 1000

    def _solve_primal(self, std, warm_start):
        matrix = std.matrix.copy()
        rhs = std.rhs.copy()
        relations = list(std.relations)
        num_rows, num_struct = matrix.shape

        row_sign = np.where(rhs < 0, -1.0, 1.0)
        matrix *= row_sign[:, np.newaxis]
        rhs *= row_sign
        for i in np.flatnonzero(row_sign < 0):
            if relations[i] == Relation.LE:
                relations[i] = Relation.GE
            elif relations[i] == Relation.GE:
                relations[i] = Relation.LE

        ineq_rows = [i for i in range(num_rows) if relations[i] != Relation.EQ]
        art_rows = [i for i in range(num_rows) if relations[i] != Relation.LE]
        first_art = num_struct + len(ineq_rows)
        num_cols = first_art + len(art_rows)

        table = np.zeros((num_rows + 1, num_cols + 1))
        table[:num_rows, :num_struct] = matrix
        table[:num_rows, -1] = rhs
        identity_col = np.empty(num_rows, dtype=int)
        basis = np.empty(num_rows, dtype=int)
        for k, i in enumerate(ineq_rows):
            col = num_struct + k
            if relations[i] == Relation.LE:
                table[i, col] = 1.0
                identity_col[i] = col
                basis[i] = col
            else:
                table[i, col] = -1.0
        for k, i in enumerate(art_rows):
            col = first_art + k
            table[i, col] = 1.0
            identity_col[i] = col
            basis[i] = col

        allowed = np.ones(num_cols, dtype=bool)
        allowed[first_art:] = False
        tableau = _Tableau(table, basis, allowed, self.tolerances, self.bland,
                           self._max_iterations(table))

        phase1_iterations = 0
        if not (warm_start is not None and self._apply_warm_start(tableau, warm_start, first_art)):
            if art_rows:
                phase1_cost = np.zeros(num_cols)
                phase1_cost[first_art:] = 1.0
                tableau.set_objective(phase1_cost)
                tableau.run_primal()
                phase1_iterations = tableau.iterations
                if -tableau.table[-1, -1] > self.tolerances.feas:
                    return self._unsolved(Status.INFEASIBLE, tableau, Algorithm.PRIMAL, phase1_iterations)
                self._drive_out_artificials(tableau, first_art)

        cost = np.zeros(num_cols)
        cost[:num_struct] = std.cost
        tableau.set_objective(cost)
        status = tableau.run_primal()
        if status != Status.OPTIMAL:
            return self._unsolved(status, tableau, Algorithm.PRIMAL, phase1_iterations)

        row_duals = -tableau.table[-1, identity_col] * row_sign
        return self._finish(std, tableau, num_struct, row_duals, Algorithm.PRIMAL, phase1_iterations)

    def _apply_warm_start(self, tableau, warm_start, first_art):
        basis = np.asarray(warm_start, dtype=int)
        table = tableau.table
        num_rows = tableau.num_rows
        if basis.shape != (num_rows,) or np.any(basis < 0) or np.any(basis >= first_art) or \
           len(set(basis.tolist())) != num_rows:
            return False
        try:
            updated = np.linalg.solve(table[:num_rows, basis], table[:num_rows])
        except np.linalg.LinAlgError:
            return False
        if np.any(updated[:, -1] < -self.tolerances.feas) or not np.all(np.isfinite(updated)):
            return False

        table[:num_rows] = updated
        tableau.basis[:] = basis
        return True

    def _drive_out_artificials(self, tableau, first_art):
        table = tableau.table
        for row in range(tableau.num_rows):
            if tableau.basis[row] < first_art:
                continue
            table[row, -1] = 0.0
            entries = np.abs(table[row, :first_art])
            col = int(np.argmax(entries)) if entries.size else 0
            if entries.size and entries[col] > self.tolerances.pivot:
                tableau.pivot(row, col)
            # Otherwise the row is redundant and its artificial stays basic at zero

    def _solve_dual(self, std):
        num_std_rows, num_struct = std.matrix.shape

        rows = []
        rhs = []
        origin = []
        for i, relation in enumerate(std.relations):
            if relation in (Relation.LE, Relation.EQ):
                rows.append(std.matrix[i])
                rhs.append(std.rhs[i])
                origin.append((i, 1.0))
            if relation in (Relation.GE, Relation.EQ):
                rows.append(-std.matrix[i])
                rhs.append(-std.rhs[i])
                origin.append((i, -1.0))
        num_rows = len(rows)
        num_cols = num_struct + num_rows

        table = np.zeros((num_rows + 1, num_cols + 1))
        if num_rows:
            table[:num_rows, :num_struct] = np.array(rows)
            table[:num_rows, num_struct:num_cols] = np.eye(num_rows)
            table[:num_rows, -1] = rhs
        basis = np.arange(num_struct, num_cols)
        allowed = np.ones(num_cols, dtype=bool)
        tableau = _Tableau(table, basis, allowed, self.tolerances, self.bland, self._max_iterations(table))

        cost = np.zeros(num_cols)
        cost[:num_struct] = std.cost
        shifted = np.maximum(cost, 0.0)
        tableau.set_objective(shifted)
        status = tableau.run_dual()
        phase1_iterations = tableau.iterations
        if status != Status.OPTIMAL:
            return self._unsolved(status, tableau, Algorithm.DUAL, phase1_iterations)

        if np.any(shifted != cost):
            # Costs were shifted to start dual feasible, finish with primal pivots on the true costs
            tableau.set_objective(cost)
            status = tableau.run_primal()
            if status != Status.OPTIMAL:
                return self._unsolved(status, tableau, Algorithm.DUAL, phase1_iterations)

        tableau_duals = -tableau.table[-1, num_struct:num_cols]
        row_duals = np.zeros(num_std_rows)
        for k, (i, sign) in enumerate(origin):
            row_duals[i] += sign * tableau_duals[k]
        return self._finish(std, tableau, num_struct, row_duals, Algorithm.DUAL, phase1_iterations)

    @staticmethod
    def _unsolved(status, tableau, algorithm, phase1_iterations):
        return LpSolution(status=status, objective_value=float('nan'), primal=None, dual=None,
                          iterations=tableau.iterations, pivot_rule_used=algorithm,
                          phase1_iterations=phase1_iterations, bland_activated=tableau.bland_activated)

    def _finish(self, std, tableau, num_struct, std_duals, algorithm, phase1_iterations):
        x_std = tableau.values(num_struct)
        primal_residual, dual_residual, gap = _residuals(std, x_std, std_duals)

        tol = self.tolerances
        primal_scale = 1.0 + (np.abs(std.rhs).max() if std.rhs.size else 0.0)
        dual_scale = 1.0 + (np.abs(std.cost).max() if std.cost.size else 0.0)
        objective_std = float(std.cost @ x_std)
        if primal_residual > tol.feas * primal_scale or dual_residual > tol.feas * dual_scale or \
           gap > tol.gap * (1.0 + abs(objective_std)):
            raise NumericalInstabilityError(f'Residual check failed (primal {primal_residual:.3g}, dual '
                                            f'{dual_residual:.3g}, gap {gap:.3g})')

        lp = std.lp
        primal = std.to_original(x_std)
        dual = std_duals[:std.num_lp_rows]
        if lp.sense == Sense.MAX:
            dual = -dual

        return LpSolution(status=Status.OPTIMAL, objective_value=float(lp.objective @ primal), primal=primal,
                          dual=dual, iterations=tableau.iterations, pivot_rule_used=algorithm,
                          phase1_iterations=phase1_iterations, bland_activated=tableau.bland_activated,
                          basis=tuple(int(b) for b in tableau.basis), primal_residual=primal_residual,
                          dual_residual=dual_residual, gap=gap)


def _residuals(std, x_std, duals):
    """
    Feasibility residuals and duality gap of a (primal, dual) pair for the minimization standard form.
    """

    activity = std.matrix @ x_std - std.rhs
    violation = np.zeros_like(activity)
    dual_sign_violation = np.zeros_like(duals)
    for i, relation in enumerate(std.relations):
        if relation == Relation.LE:
            violation[i] = max(activity[i], 0.0)
            dual_sign_violation[i] = max(duals[i], 0.0)
        elif relation == Relation.GE:
            violation[i] = max(-activity[i], 0.0)
            dual_sign_violation[i] = max(-duals[i], 0.0)
        else:
            violation[i] = abs(activity[i])

    primal_residual = max(violation.max(initial=0.0), -x_std.min(initial=0.0))
    reduced = std.cost - std.matrix.T @ duals
    dual_residual = max(-reduced.min(initial=0.0), dual_sign_violation.max(initial=0.0))
    gap = abs(float(std.cost @ x_std) - float(std.rhs @ duals))
    return float(primal_residual), float(dual_residual), gap


def solve(lp, algorithm=Algorithm.PRIMAL, tolerances=DEFAULT_TOLERANCES, bland=False, warm_start=None):
    """
    Solves `lp` with a one-off SimplexSolver, see `SimplexSolver.solve()`.
    """

    return SimplexSolver(algorithm, tolerances, bland).solve(lp, warm_start=warm_start)
