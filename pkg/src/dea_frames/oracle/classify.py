"""
Brute-force reference classification with one full-size LP per DMU and question. Slow by nature, but
independent of the order-dependent bookkeeping of the frame-finding procedures.
"""

import dataclasses
import logging
import multiprocessing

import numpy as np
import pandas as pd

from dea_frames.dea import dominance_test, membership_test, output_score
from dea_frames.lib.date_time import get_monotonic_time
from dea_frames.lib.labels import PointLabel
from dea_frames.lp import SimplexSolver


@dataclasses.dataclass(eq=False)
class ClassificationReport:
    """
    Label and output-oriented score of every DMU of a dataset.

    Attributes:
        labels: One PointLabel per DMU.
        scores: Output-oriented VRS score of every DMU against the full dataset.
        representatives: Lowest index of every group of identical points.
        duplicates: Maps representative index to the other indices with the same point.
        extreme_representatives: Representatives whose point is extreme, the same indices as `frame`.
    """

    dataset_name: str
    labels: list
    scores: np.ndarray
    representatives: list
    duplicates: dict
    extreme_representatives: list
    lp_count: int
    wall_time: float

    @property
    def n(self):
        return len(self.labels)

    @property
    def frame(self):
        return [i for i, label in enumerate(self.labels) if label == PointLabel.EXTREME_EFFICIENT]

    @property
    def boundary(self):
        return [i for i, label in enumerate(self.labels) if label != PointLabel.INTERIOR]

    @property
    def interior(self):
        return [i for i, label in enumerate(self.labels) if label == PointLabel.INTERIOR]

    @property
    def density(self):
        return len(self.extreme_representatives) / self.n

    def to_dataframe(self):
        return pd.DataFrame({
            'dmu': np.arange(self.n),
            'label': [str(label) for label in self.labels],
            'score': self.scores
        })


def _group_duplicates(dataset):

    _, first_index, inverse = np.unique(dataset.translated, axis=0, return_index=True, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    rep_of = first_index[inverse]
    representatives = sorted(int(i) for i in first_index)
    duplicates = {}
    for i in range(dataset.n):
        rep = int(rep_of[i])
        if rep != i:
            duplicates.setdefault(rep, []).append(i)
    return representatives, duplicates, rep_of


def _classify_representative(task):
    """
    Classifies one representative against the other representatives.

    Returns:
        Tuple of (label, phi, number of LPs solved).
    """

    dataset, representatives, index, solver = task
    others = [r for r in representatives if r != index]

    lp_count = 0
    if not others:
        label = PointLabel.EXTREME_EFFICIENT
    else:
        result = membership_test(dataset.translated[others], dataset.translated[index], solver)
        lp_count += 1
        if result.delta > solver.tolerances.member:
            label = PointLabel.EXTREME_EFFICIENT
        else:
            t = dominance_test(representatives, dataset, index, solver)
            lp_count += 1
            label = PointLabel.INTERIOR if t > solver.tolerances.member else PointLabel.BOUNDARY_NONEXTREME

    score = output_score(representatives, dataset, index, deleted_domain=False, solver=solver)
    lp_count += 1

    return label, score.phi, lp_count


def classify_all(dataset, solver=None, workers=None):
    """
    Labels every DMU as extreme efficient, boundary non-extreme or interior and scores it against the full
    dataset.

    Identical points are collapsed to their lowest index before testing. The other members of a group share
    the representative's label, except that they are never extreme: an extreme representative keeps its
    label and its twins are labeled boundary non-extreme, so `frame` equals `extreme_representatives`.

    Args:
        dataset: The Dataset.
        solver: SimplexSolver to use, defaults to a primal solver with default tolerances.
        workers: Number of worker processes, None or 1 solves everything in this process.
    """

    if solver is None:
        solver = SimplexSolver()
    start_time = get_monotonic_time()

    representatives, duplicates, rep_of = _group_duplicates(dataset)
    if duplicates:
        logging.warning('Dataset "%s" contains %d duplicate points', dataset.name,
                        sum(len(d) for d in duplicates.values()))

    tasks = [(dataset, representatives, index, solver) for index in representatives]
    if workers is not None and workers > 1:
        chunksize = max(1, len(tasks) // (workers * 8))
        with multiprocessing.Pool(workers) as pool:
            outcomes = list(pool.imap(_classify_representative, tasks, chunksize))
    else:
        outcomes = [_classify_representative(task) for task in tasks]

    rep_labels = {}
    rep_scores = {}
    lp_count = 0
    for index, (label, phi, count) in zip(representatives, outcomes):
        rep_labels[index] = label
        rep_scores[index] = phi
        lp_count += count

    extreme_representatives = [r for r in representatives if rep_labels[r] == PointLabel.EXTREME_EFFICIENT]
    labels = []
    scores = np.empty(dataset.n)
    for i in range(dataset.n):
        rep = int(rep_of[i])
        label = rep_labels[rep]
        if label == PointLabel.EXTREME_EFFICIENT and rep != i:
            label = PointLabel.BOUNDARY_NONEXTREME
        labels.append(label)
        scores[i] = rep_scores[rep]

    wall_time = get_monotonic_time() - start_time
    logging.info('Oracle classified %d DMUs of "%s" with %d LPs in %.2f s, %d extreme', dataset.n,
                 dataset.name, lp_count, wall_time, len(extreme_representatives))

    return ClassificationReport(dataset_name=dataset.name, labels=labels, scores=scores,
                                representatives=representatives, duplicates=duplicates,
                                extreme_representatives=extreme_representatives, lp_count=lp_count,
                                wall_time=wall_time)
