"""
Phase 1 of Enhanced Hierarchical Decomposition (EHD).

Step 1 picks an initial subset A^S of p DMUs close to the frontier. Step 2 finds the boundary B^S of the
subset's hull, Step 3 tests all other DMUs against the hull of B^S and keeps the exterior ones, Step 4
finds the boundary of the hull of B^S plus those exterior points. Each LP of Steps 2-4 has a fixed size per
step.
"""

import dataclasses
import logging

from dea_frames.dea import boundary_test, exterior_test_step3
from dea_frames.lib.date_time import get_monotonic_time
from dea_frames.lib.exceptions import ContractError
from dea_frames.lp import InternalSolverError, SimplexSolver
from dea_frames.preprocess import select_initial_subset


@dataclasses.dataclass(eq=False)
class StepMetrics:
    """
    LP accounting of one step. `lp_count` counts one LP per tested DMU, `dominance_lp_count` the additional
    strict-dominance LPs needed to tell weakly efficient DMUs apart.
    """

    lp_size: int
    lp_count: int = 0
    dominance_lp_count: int = 0
    wall_time: float = 0.0


@dataclasses.dataclass(eq=False)
class SubsetBoundary:

    boundary: list
    interior: list
    metrics: StepMetrics
    twins: list = dataclasses.field(default_factory=list)


@dataclasses.dataclass(eq=False)
class ExteriorPartition:

    exterior: list
    interior_found: list
    partial_boundary_found: list
    metrics: StepMetrics


@dataclasses.dataclass(eq=False)
class FinalBoundary:

    boundary: list
    pool: list
    metrics: StepMetrics
    twins: list = dataclasses.field(default_factory=list)


@dataclasses.dataclass(eq=False)
class EhdResult:
    """
    Output and accounting of an EHD run.

    Attributes:
        boundary: Sorted boundary set B.
        initial_subset: A^S.
        subset_boundary: B^S, the boundary points of the hull of A^S.
        exterior: ext_B^S, the DMUs outside A^S which are exterior to the hull of B^S.
        productivity: Number of DMUs identified as interior before Step 4.
    """

    boundary: list
    initial_subset: list
    subset_boundary: list
    exterior: list
    interior_step2: list
    interior_step3: list
    partial_boundary_found: list
    m_hat: int
    p: int
    step2: StepMetrics
    step3: StepMetrics
    step4: StepMetrics
    wall_time: float
    include_partial_boundary: bool = False

    @property
    def productivity(self):
        return len(self.interior_step2) + len(self.interior_step3)

    @property
    def total_lp_count(self):
        return self.step2.lp_count + self.step3.lp_count + self.step4.lp_count

    @property
    def dominance_lp_count(self):
        return self.step2.dominance_lp_count + self.step3.dominance_lp_count + self.step4.dominance_lp_count


def _boundary_of(reference, candidates, dataset, solver, metrics):
    """
    Runs the boundary test for every candidate against the hull of `reference`.

    Returns:
        Tuple of (boundary candidates, interior candidates).
    """

    boundary = []
    interior = []
    for index in candidates:
        result = boundary_test(reference, dataset, index, solver)
        metrics.lp_count += 1
        metrics.dominance_lp_count += result.lps_solved - 1
        if result.on_boundary:
            boundary.append(index)
        else:
            interior.append(index)
    return boundary, interior


def _drop_twins(seed, boundary, dataset):
    """
    Keeps one DMU per group of identical points, preferring seed members and then the lowest index.

    Returns:
        Tuple of (sorted kept DMUs, sorted dropped twins).
    """

    kept = {}
    twins = []
    for index in sorted(seed) + sorted(set(boundary) - set(seed)):
        key = dataset.translated[index].tobytes()
        if key in kept:
            twins.append(index)
        else:
            kept[key] = index
    return sorted(kept.values()), sorted(twins)


def step2_boundary_of_subset(initial_subset, dataset, extreme_seed, solver=None):
    """
    Partitions the initial subset into the boundary points of its hull and the rest. Members of
    `extreme_seed` join the boundary without an LP. Of several identical boundary points only one is kept,
    the others are reported as `twins`.
    """

    if solver is None:
        solver = SimplexSolver()
    initial_subset = sorted(int(i) for i in initial_subset)
    seed = set(extreme_seed)
    if not seed.issubset(initial_subset):
        raise ContractError('Extreme seed must be part of the initial subset')

    start_time = get_monotonic_time()
    metrics = StepMetrics(lp_size=len(initial_subset))
    candidates = [i for i in initial_subset if i not in seed]
    boundary, interior = _boundary_of(initial_subset, candidates, dataset, solver, metrics)
    boundary, twins = _drop_twins(seed, boundary, dataset)
    metrics.wall_time = get_monotonic_time() - start_time

    return SubsetBoundary(boundary=boundary, interior=interior, metrics=metrics, twins=twins)


def step3_exterior_partition(subset_boundary, dataset, initial_subset, solver=None):
    """
    Tests every DMU outside the initial subset against the hull of the subset's boundary with a
    deleted-domain score LP. Exterior DMUs are kept, the others are split into interior ones (phi above
    1 + member_tol) and ones on the boundary of the partial hull.
    """

    if solver is None:
        solver = SimplexSolver()
    subset_boundary = sorted(int(i) for i in subset_boundary)
    if not subset_boundary:
        raise ContractError('Boundary of the initial subset must not be empty')
    in_subset = set(initial_subset)

    start_time = get_monotonic_time()
    metrics = StepMetrics(lp_size=len(subset_boundary))
    member_tol = solver.tolerances.member
    exterior = []
    interior_found = []
    partial_boundary_found = []
    for index in range(dataset.n):
        if index in in_subset:
            continue
        result = exterior_test_step3(subset_boundary, dataset, index, solver)
        metrics.lp_count += 1
        if result.exterior:
            exterior.append(index)
        elif result.phi > 1.0 + member_tol:
            interior_found.append(index)
        else:
            partial_boundary_found.append(index)
    metrics.wall_time = get_monotonic_time() - start_time

    return ExteriorPartition(exterior=exterior, interior_found=interior_found,
                             partial_boundary_found=partial_boundary_found, metrics=metrics)


def step4_final_boundary(subset_boundary, exterior, dataset, extreme_seed, include_partial_boundary=False,
                         partial_boundary_found=(), solver=None):
    """
    Finds the boundary points of the hull of B^S and ext_B^S (plus the Step-3 partial boundary points if
    `include_partial_boundary` is set). Members of `extreme_seed` are part of the pool and join the result
    without an LP. Identical boundary points are reduced to one as in Step 2.
    """

    if solver is None:
        solver = SimplexSolver()
    pool = set(subset_boundary) | set(exterior)
    if include_partial_boundary:
        pool |= set(partial_boundary_found)
    pool = sorted(int(i) for i in pool)
    seed = set(extreme_seed)
    if not seed.issubset(pool):
        raise ContractError('Extreme seed must be part of the Step-4 pool')

    start_time = get_monotonic_time()
    metrics = StepMetrics(lp_size=len(pool))
    candidates = [i for i in pool if i not in seed]
    boundary, _ = _boundary_of(pool, candidates, dataset, solver, metrics)
    boundary, twins = _drop_twins(seed, boundary, dataset)
    metrics.wall_time = get_monotonic_time() - start_time

    return FinalBoundary(boundary=boundary, pool=pool, metrics=metrics, twins=twins)


def _check_accounting(result, n):

    m_hat = result.m_hat
    pool_size = result.step4.lp_size
    expected = [
        (result.step2.lp_count, result.p - m_hat, 'Step-2 LP count'),
        (result.step2.lp_size, result.p, 'Step-2 LP size'),
        (result.step3.lp_count, n - result.p, 'Step-3 LP count'),
        (result.step3.lp_size, len(result.subset_boundary), 'Step-3 LP size'),
        (result.step4.lp_count, pool_size - m_hat, 'Step-4 LP count'),
        (result.total_lp_count, n - m_hat + result.step4.lp_count, 'total LP count')
    ]
    for actual, wanted, name in expected:
        if actual != wanted:
            raise InternalSolverError(f'EHD accounting broken: {name} is {actual}, expected {wanted}')


def run_ehd(dataset, p, prep, solver=None, include_partial_boundary=False):
    """
    Runs Steps 1-4 of EHD.

    Args:
        dataset: The Dataset.
        p: Size of the initial subset, m_hat <= p <= n.
        prep: PreprocessorOutput of the dataset.
        solver: SimplexSolver for all LPs.
        include_partial_boundary: Add DMUs found on the boundary of the partial hull in Step 3 to the
                                  Step-4 pool.

    Returns:
        An EhdResult.
    """

    if solver is None:
        solver = SimplexSolver()
    if not prep.m_hat <= p <= dataset.n:
        raise ContractError(f'Subset size p={p} must be between m_hat={prep.m_hat} and n={dataset.n}')

    start_time = get_monotonic_time()
    initial_subset = select_initial_subset(dataset, p, prep)
    step2 = step2_boundary_of_subset(initial_subset, dataset, prep.extreme_seed, solver)
    logging.debug('EHD Step 2: %d of %d subset DMUs on the boundary', len(step2.boundary), p)
    step3 = step3_exterior_partition(step2.boundary, dataset, initial_subset, solver)
    logging.debug('EHD Step 3: %d exterior, %d interior, %d on the partial boundary', len(step3.exterior),
                  len(step3.interior_found), len(step3.partial_boundary_found))
    step4 = step4_final_boundary(step2.boundary, step3.exterior, dataset, prep.extreme_seed,
                                 include_partial_boundary, step3.partial_boundary_found, solver)
    wall_time = get_monotonic_time() - start_time

    result = EhdResult(boundary=step4.boundary, initial_subset=initial_subset,
                       subset_boundary=step2.boundary, exterior=step3.exterior,
                       interior_step2=step2.interior, interior_step3=step3.interior_found,
                       partial_boundary_found=step3.partial_boundary_found, m_hat=prep.m_hat, p=p,
                       step2=step2.metrics, step3=step3.metrics, step4=step4.metrics, wall_time=wall_time,
                       include_partial_boundary=include_partial_boundary)
    _check_accounting(result, dataset.n)

    if step3.partial_boundary_found and not include_partial_boundary:
        logging.warning('%d DMUs on the boundary of the partial hull were left out of the Step-4 pool',
                        len(step3.partial_boundary_found))
    logging.info('EHD found %d boundary DMUs of "%s" with %d LPs in %.3f s', len(result.boundary),
                 dataset.name, result.total_lp_count, wall_time)

    return result
