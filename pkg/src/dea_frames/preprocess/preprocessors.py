"""
LP-free preprocessing shared by both procedures: dimension sorting identifies a first set of extreme DMUs,
pre-scores estimate how close every DMU is to the frontier.
"""

import dataclasses
import enum
import logging
import math

import numpy as np
import scipy.stats

from dea_frames.lib.date_time import get_monotonic_time
from dea_frames.lib.exceptions import ContractError


@dataclasses.dataclass(eq=False)
class PreprocessorOutput:
    """
    Attributes:
        extreme_seed: Sorted indices of the DMUs known to be extreme without solving an LP.
        prescores: One value in [0, 1] per DMU, higher means closer to the frontier.
        elapsed: Wall time of the preprocessing in seconds.
    """

    extreme_seed: list
    prescores: np.ndarray
    elapsed: float = 0.0

    @property
    def m_hat(self):
        return len(self.extreme_seed)


class OrderKind(enum.Enum):
    """
    Processing orders for the DMUs left after preprocessing.
    """

    ASCENDING = 'ascending'    # Ascending pre-score
    DESCENDING = 'descending'
    INDEX = 'index'
    RANDOM = 'random'

    def __str__(self):
        return self.value


def _lex_max(points, candidates, key_order):
    """
    Returns the candidate whose point is lexicographically largest when comparing the coordinates in
    `key_order`; exact duplicates go to the lowest index.
    """

    # np.lexsort sorts by its last key first, the negated index makes the lowest index win full ties
    keys = [-candidates] + [points[candidates, k] for k in reversed(key_order)]
    return int(candidates[np.lexsort(keys)[-1]])


def dimension_sort(dataset):
    """
    For every translated coordinate k picks the DMU with the largest a_k, where ties are broken by
    lexicographic maximality over the remaining coordinates.

    Returns:
        Sorted list of the distinct selected indices.
    """

    points = dataset.translated
    candidates = np.arange(dataset.n)
    selected = set()
    for k in range(dataset.m):
        key_order = [k] + [j for j in range(dataset.m) if j != k]
        selected.add(_lex_max(points, candidates, key_order))

    return sorted(selected)


def prescore(dataset):
    """
    Quantile-rank pre-score: the average over all inputs of (1 - rank/n) and over all outputs of rank/n,
    where rank is the ascending fractional rank with ties averaged.
    """

    n = dataset.n
    input_ranks = scipy.stats.rankdata(dataset.inputs, method='average', axis=0)
    output_ranks = scipy.stats.rankdata(dataset.outputs, method='average', axis=0)
    total = (1.0 - input_ranks / n).sum(axis=1) + (output_ranks / n).sum(axis=1)
    return total / dataset.m


PRESCORERS = {
    'quantile': prescore
}


def preprocess(dataset, single_seed=False, prescorer='quantile'):
    """
    Runs dimension sorting and pre-scoring.

    Args:
        single_seed: Keep only the extreme DMU found for the first translated coordinate (m_hat = 1).
        prescorer: Name of the pre-scoring function in PRESCORERS.
    """

    try:
        prescore_func = PRESCORERS[prescorer]
    except KeyError as e:
        raise ContractError(f'Unknown pre-scorer "{prescorer}"') from e

    start_time = get_monotonic_time()
    if single_seed:
        points = dataset.translated
        key_order = list(range(dataset.m))
        seed = [_lex_max(points, np.arange(dataset.n), key_order)]
    else:
        seed = dimension_sort(dataset)
    prescores = prescore_func(dataset)
    elapsed = get_monotonic_time() - start_time

    logging.debug('Preprocessing of "%s" found %d extreme DMUs: %s', dataset.name, len(seed), seed)
    return PreprocessorOutput(extreme_seed=seed, prescores=prescores, elapsed=elapsed)


def default_subset_size(n, m_hat=1):
    """
    Size p of the initial subset: ceil(sqrt(n)), but never less than m_hat.
    """

    root = math.isqrt(n)
    if root * root < n:
        root += 1
    return max(root, m_hat)


def select_initial_subset(dataset, p, prep):
    """
    Returns the sorted initial subset A^S: the extreme seed plus the (p - m_hat) remaining DMUs with the
    highest pre-scores, lower indices first on ties.
    """

    if p < prep.m_hat:
        raise ContractError(f'Subset size {p} is smaller than the extreme seed ({prep.m_hat})')
    if p > dataset.n:
        raise ContractError(f'Subset size {p} exceeds the number of DMUs ({dataset.n})')

    seed = set(prep.extreme_seed)
    remaining = np.array([i for i in range(dataset.n) if i not in seed], dtype=int)
    order = np.lexsort((remaining, -prep.prescores[remaining]))
    chosen = remaining[order[:p - prep.m_hat]]

    return sorted(seed | {int(i) for i in chosen})


def processing_order(prep, remaining, kind=OrderKind.ASCENDING, seed=None):
    """
    Orders the DMU indices `remaining` for processing.

    Args:
        kind: An OrderKind, pre-score ties are always broken by ascending index.
        seed: Random seed, only used for OrderKind.RANDOM.
    """

    kind = OrderKind(kind)
    remaining = np.array(sorted(remaining), dtype=int)
    if kind == OrderKind.ASCENDING:
        order = remaining[np.lexsort((remaining, prep.prescores[remaining]))]
    elif kind == OrderKind.DESCENDING:
        order = remaining[np.lexsort((remaining, -prep.prescores[remaining]))]
    elif kind == OrderKind.INDEX:
        order = remaining
    else:
        order = np.random.default_rng(seed).permutation(remaining)

    return [int(i) for i in order]
