import dataclasses
import logging

import numpy as np

from dea_frames.dea import output_score
from dea_frames.lib.date_time import get_monotonic_time
from dea_frames.lib.exceptions import ContractError
from dea_frames.lp import InternalSolverError, SimplexSolver


@dataclasses.dataclass(eq=False)
class ScoreTable:
    """
    Output-oriented scores of the DMUs outside a Phase-1 reference set.
    """

    scores: dict
    lp_size: int
    lp_count: int
    wall_time: float

    def __len__(self):
        return len(self.scores)


def score_all(dataset, reference, targets, solver=None):
    """
    Scores every target with the deleted-domain output-oriented VRS model over `reference`.

    Args:
        reference: Output of Phase 1 (the frame or the boundary set), which spans the full hull.
        targets: DMU indices outside the reference set.

    Returns:
        A ScoreTable mapping target index to phi.
    """

    if solver is None:
        solver = SimplexSolver()
    reference = sorted(int(i) for i in reference)
    targets = sorted(int(i) for i in targets)
    if set(reference) & set(targets):
        raise ContractError('Targets must not be part of the reference set')

    start_time = get_monotonic_time()
    scores = {}
    for target in targets:
        result = output_score(reference, dataset, target, deleted_domain=True, solver=solver)
        if not result.feasible:
            raise InternalSolverError(f'DMU {target} is outside the hull spanned by the reference set')
        scores[target] = result.phi
    wall_time = get_monotonic_time() - start_time

    logging.info('Scored %d DMUs against %d reference DMUs in %.3f s', len(targets), len(reference),
                 wall_time)
    return ScoreTable(scores=scores, lp_size=len(reference), lp_count=len(targets), wall_time=wall_time)


def score_phase2(dataset, reference, solver=None):
    """
    Scores all DMUs which are not part of the Phase-1 reference set.
    """

    in_reference = np.zeros(dataset.n, dtype=bool)
    in_reference[list(reference)] = True
    return score_all(dataset, reference, np.flatnonzero(~in_reference), solver)
