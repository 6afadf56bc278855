"""
Phase 1 of BuildHull: grow a partial frame one extreme point at a time. Every unclassified point is tested
against the hull of the current partial frame; points outside it yield a separating hyperplane which is
translated over the unclassified points to expose a new frame element.
"""

import dataclasses
import logging

import numpy as np

from dea_frames.dea import membership_test
from dea_frames.lib.date_time import get_monotonic_time
from dea_frames.lib.exceptions import ContractError
from dea_frames.lp import InternalSolverError, SimplexSolver


@dataclasses.dataclass(eq=False)
class FrameResult:
    """
    Output and accounting of a BuildHull run.

    Attributes:
        frame: Sorted indices of the frame.
        admission_order: Frame indices in the order they joined the partial frame; the initial frame
                         comes first, so every prefix of length >= m_hat is one of the nested partial
                         frames.
        lp_sizes: Number of lambda columns of every membership LP (the delta column is not counted).
        lp_count: Number of membership LPs, always n - m_hat.
        tie_lp_count: Additional LPs solved to resolve hyperplane ties in exact tie mode.
        retest_count: Exterior tests that admitted another point, so the test point stayed unclassified.
    """

    frame: list
    admission_order: list
    m_hat: int
    lp_count: int
    lp_sizes: list
    hyperplane_translations: int
    inner_products: int
    wall_time: float
    hyperplane_time: float = 0.0
    membership_time: float = 0.0
    tie_lp_count: int = 0
    retest_count: int = 0

    @property
    def avg_lp_size(self):
        if not self.lp_sizes:
            return 0.0
        return float(np.mean(self.lp_sizes))

    @property
    def lp_columns(self):
        return [size + 1 for size in self.lp_sizes]


def translate_hyperplane(pi, beta, candidates, points, tolerance, tie_resolver=None):
    """
    Slides the hyperplane pi·a + beta = 0 outward over the candidate points and returns the index of the
    first point it touches: the maximizer of pi·a, ties going to the lexicographically largest point and
    then to the lowest index.

    Args:
        candidates: Indices of the unclassified points, including the exterior test point.
        points: Translated points of the whole dataset.
        tolerance: A maximizer must have pi·a + beta above this value.
        tie_resolver: Optional callable getting the indices of all tied maximizers (in tie-break order) and
                      returning the one to admit.

    Returns:
        Tuple of (admitted index, number of inner products computed).

    Raises:
        InternalSolverError: If no candidate lies on the positive side of the hyperplane.
    """

    candidates = np.asarray(candidates, dtype=int)
    if candidates.size == 0:
        raise ContractError('Hyperplane translation needs at least one candidate')

    values = points[candidates] @ pi
    best = values.max()
    if best + beta <= tolerance:
        raise InternalSolverError(f'Invalid separation certificate: best candidate value {best + beta:.3g}')

    tied = candidates[values >= best - 1e-12 * max(1.0, abs(best))]
    if tied.size > 1:
        # Lexicographic maximum over the translated coordinates, then lowest index
        keys = [-tied] + [points[tied, k] for k in reversed(range(points.shape[1]))]
        tied = tied[np.lexsort(keys)[::-1]]
        if tie_resolver is not None:
            return int(tie_resolver(tied)), candidates.size

    return int(tied[0]), candidates.size


def check_extreme(dataset, indices, solver):
    """
    Asserts with deleted-domain membership LPs that every DMU in `indices` is outside the hull of all other
    DMUs.

    Raises:
        ContractError: For the first index which is not extreme.
    """

    points = dataset.translated
    for index in indices:
        others = np.delete(np.arange(dataset.n), index)
        if others.size == 0:
            continue
        result = membership_test(points[others], points[index], solver)
        if result.is_member:
            raise ContractError(f'DMU {index} is not extreme (delta {result.delta:.3g})')


def build_hull(dataset, init_frame, order, solver=None, exact_ties=False, verify_init=False):
    """
    Identifies the frame of the dataset's VRS hull.

    Args:
        dataset: The Dataset.
        init_frame: Non-empty collection of indices known to be extreme, usually from dimension sorting.
        order: The remaining indices (all indices not in `init_frame`) in processing order.
        solver: SimplexSolver for the membership LPs.
        exact_ties: Resolve tied hyperplane maximizers by testing them against each other instead of only
                    by the lexicographic rule.
        verify_init: Check the initial frame with deleted-domain LPs before starting.

    Returns:
        A FrameResult.
    """

    if solver is None:
        solver = SimplexSolver()
    init_frame = [int(i) for i in init_frame]
    order = [int(i) for i in order]
    if not init_frame:
        raise ContractError('Initial frame must not be empty')
    if len(set(init_frame)) != len(init_frame):
        raise ContractError('Initial frame contains duplicate indices')
    if sorted(init_frame + order) != list(range(dataset.n)):
        raise ContractError('Initial frame and processing order must partition the DMU indices')
    if verify_init:
        check_extreme(dataset, init_frame, solver)

    points = dataset.translated
    member_tol = solver.tolerances.member
    tie_lp_count = 0

    def resolve_tie(tied):
        nonlocal tie_lp_count
        for index in tied:
            others = [i for i in tied if i != index]
            result = membership_test(points[others], points[index], solver)
            tie_lp_count += 1
            if not result.is_member:
                return index
        return tied[0]

    tie_resolver = resolve_tie if exact_ties else None

    start_time = get_monotonic_time()
    partial_frame = list(init_frame)
    # Unclassified points in processing order; the head is the next test point
    pending = list(order)
    lp_sizes = []
    translations = 0
    inner_products = 0
    retests = 0
    hyperplane_time = 0.0
    membership_time = 0.0

    head = 0
    while head < len(pending):
        test_point = pending[head]
        lp_start = get_monotonic_time()
        result = membership_test(points[partial_frame], points[test_point], solver)
        membership_time += get_monotonic_time() - lp_start
        lp_sizes.append(len(partial_frame))

        if result.is_member:
            head += 1
            continue

        translate_start = get_monotonic_time()
        candidates = pending[head:]
        admitted, products = translate_hyperplane(result.hyperplane_pi, result.hyperplane_beta, candidates,
                                                  points, member_tol, tie_resolver)
        hyperplane_time += get_monotonic_time() - translate_start
        inner_products += products
        translations += 1

        partial_frame.append(admitted)
        if admitted == test_point:
            head += 1
        else:
            pending.remove(admitted)
            retests += 1
        logging.debug('Admitted DMU %d to the partial frame (size %d) after testing DMU %d', admitted,
                      len(partial_frame), test_point)

    wall_time = get_monotonic_time() - start_time

    m_hat = len(init_frame)
    frame_size = len(partial_frame)
    if len(lp_sizes) != dataset.n - m_hat or translations != frame_size - m_hat:
        raise InternalSolverError(f'LP accounting broken: {len(lp_sizes)} LPs, {translations} translations')

    logging.info('BuildHull found %d frame elements of "%s" with %d LPs in %.3f s', frame_size,
                 dataset.name, len(lp_sizes), wall_time)

    return FrameResult(frame=sorted(partial_frame), admission_order=partial_frame, m_hat=m_hat,
                       lp_count=len(lp_sizes), lp_sizes=lp_sizes, hyperplane_translations=translations,
                       inner_products=inner_products, wall_time=wall_time, hyperplane_time=hyperplane_time,
                       membership_time=membership_time, tie_lp_count=tie_lp_count, retest_count=retests)
