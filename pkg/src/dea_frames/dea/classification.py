import dataclasses

import numpy as np

from dea_frames.lp import InternalSolverError, SimplexSolver, Status

from .models import build_membership_lp, build_output_oriented_vrs, build_strict_dominance_lp


_DEFAULT_SOLVER = SimplexSolver()


def _solver_or_default(solver):
    return _DEFAULT_SOLVER if solver is None else solver


@dataclasses.dataclass(eq=False)
class MembershipResult:
    """
    Outcome of a VRS hull membership test for a point b.

    For non-members, (hyperplane_pi, hyperplane_beta) separates b from the hull: pi·a + beta <= 0 for every
    generator a, while pi·b + beta equals delta.
    """

    delta: float
    lam: np.ndarray
    hyperplane_pi: np.ndarray
    hyperplane_beta: float
    is_member: bool

    def separation(self, points):
        """
        Returns pi·a + beta for every row a of `points`.
        """

        return np.asarray(points, dtype=float) @ self.hyperplane_pi + self.hyperplane_beta


@dataclasses.dataclass(eq=False)
class ScoreResult:

    phi: float
    lam: np.ndarray
    feasible: bool


@dataclasses.dataclass(eq=False)
class ExteriorResult:
    """
    Outcome of the exterior test against a partial hull. `phi` is None if the score LP was infeasible.
    """

    exterior: bool
    phi: float

    @property
    def in_hull(self):
        return not self.exterior


@dataclasses.dataclass(eq=False)
class BoundaryResult:
    """
    Outcome of a boundary test. `t` is None when the score alone decided, `lps_solved` is 1 or 2.
    """

    on_boundary: bool
    phi: float
    t: float
    lps_solved: int


def membership_test(generators, b, solver=None):
    """
    Tests whether point b lies in the VRS hull of the generators and returns a MembershipResult including
    the separating hyperplane from the LP duals.

    Raises:
        InternalSolverError: If the (always feasible and bounded) LP is reported as infeasible or unbounded.
    """

    solver = _solver_or_default(solver)
    lp = build_membership_lp(generators, b)
    solution = solver.solve(lp)
    if solution.status != Status.OPTIMAL:
        raise InternalSolverError(f'Membership LP reported as {solution.status}')

    num_gen = lp.num_vars - 1
    dim = lp.num_rows - 1
    delta = max(float(solution.primal[num_gen]), 0.0)
    return MembershipResult(delta=delta, lam=solution.primal[:num_gen],
                            hyperplane_pi=np.maximum(solution.dual[:dim], 0.0),
                            hyperplane_beta=float(solution.dual[dim]),
                            is_member=delta <= solver.tolerances.member)


def output_score(reference, dataset, target, deleted_domain=False, solver=None):
    """
    Output-oriented VRS score phi of DMU `target` with respect to the hull of the reference DMUs.
    An infeasible model (only possible with `deleted_domain`) gives `feasible=False` and phi NaN.
    """

    solver = _solver_or_default(solver)
    lp = build_output_oriented_vrs(reference, dataset, target, deleted_domain)
    solution = solver.solve(lp)
    if solution.status == Status.INFEASIBLE:
        if not deleted_domain:
            raise InternalSolverError('Score LP with target in reference reported as infeasible')
        return ScoreResult(phi=float('nan'), lam=None, feasible=False)
    if solution.status != Status.OPTIMAL:
        raise InternalSolverError(f'Score LP reported as {solution.status}')

    return ScoreResult(phi=float(solution.primal[-1]), lam=solution.primal[:-1], feasible=True)


def exterior_test_step3(reference, dataset, target, solver=None):
    """
    Deleted-domain exterior test of DMU `target` against the hull of `reference`: The target is exterior
    if the score LP is infeasible or phi* < 1 - gap_tol.
    """

    solver = _solver_or_default(solver)
    score = output_score(reference, dataset, target, deleted_domain=True, solver=solver)
    if not score.feasible:
        return ExteriorResult(exterior=True, phi=None)
    return ExteriorResult(exterior=score.phi < 1.0 - solver.tolerances.gap, phi=score.phi)


def dominance_test(reference, dataset, target, solver=None):
    """
    Returns t*, the largest amount by which a point of the reference hull beats DMU `target` in every
    translated coordinate.
    """

    solver = _solver_or_default(solver)
    lp = build_strict_dominance_lp(reference, dataset, target)
    solution = solver.solve(lp)
    if solution.status != Status.OPTIMAL:
        raise InternalSolverError(f'Dominance LP reported as {solution.status}')
    return float(solution.primal[-1])


def boundary_test(reference, dataset, target, solver=None):
    """
    Decides whether DMU `target`, which must be part of `reference`, lies on the boundary of the reference
    hull. The score LP decides alone if phi* <= 1 + member_tol, otherwise the strict-dominance LP tells
    weakly efficient points (t* <= member_tol) from interior ones.
    """

    solver = _solver_or_default(solver)
    member_tol = solver.tolerances.member
    score = output_score(reference, dataset, target, deleted_domain=False, solver=solver)
    if score.phi <= 1.0 + member_tol:
        return BoundaryResult(on_boundary=True, phi=score.phi, t=None, lps_solved=1)

    t = dominance_test(reference, dataset, target, solver)
    return BoundaryResult(on_boundary=t <= member_tol, phi=score.phi, t=t, lps_solved=2)
