"""
Utilities for writing unit tests for the DEA frame-finding code.
"""

import os
import unittest

import numpy as np
from scipy.optimize import linprog

from dea_frames.dea import Dataset
from dea_frames.lp import LinearProgram, Relation, Sense


def slow_test(test):
    """
    Decorator for acceptance and performance tests, which only run with DEA_SLOW_TESTS=1.
    """

    return unittest.skipUnless(os.environ.get('DEA_SLOW_TESTS') == '1', 'DEA_SLOW_TESTS not set')(test)


def dea5_dataset():
    """
    Five DMUs with one input and one output: A(1,1), B(2,3), C(4,4), D(3,2), E(2,1) at indices 0 to 4.
    The frame is {A, B, C}, D and E are interior.
    """

    return Dataset('dea5', [[1.0], [2.0], [4.0], [3.0], [2.0]], [[1.0], [3.0], [4.0], [2.0], [1.0]])


DEA5_FRAME = [0, 1, 2]


def random_dataset(n, m1, m2, seed, name=None):
    """
    Uniformly distributed positive data, which in higher dimensions has a large frame.
    """

    rng = np.random.default_rng(seed)
    inputs = rng.uniform(1.0, 10.0, (n, m1))
    outputs = rng.uniform(1.0, 10.0, (n, m2))
    return Dataset(name or f'random-{n}-{m1}x{m2}-{seed}', inputs, outputs)


def random_lp(rng, num_rows, num_vars):
    """
    Random maximization with "<=" rows and positive coefficients plus one covering ">=" row, so it is
    feasible, bounded and needs a Phase 1.
    """

    matrix = rng.uniform(0.1, 1.0, (num_rows, num_vars))
    rhs = rng.uniform(1.0, 10.0, num_rows)
    objective = rng.uniform(0.0, 1.0, num_vars)

    step = float(np.min(rhs / matrix.sum(axis=1)))
    cover = 0.5 * step * num_vars
    matrix = np.vstack((matrix, np.ones(num_vars)))
    rhs = np.append(rhs, cover)
    relations = [Relation.LE] * num_rows + [Relation.GE]

    return LinearProgram(Sense.MAX, objective, matrix, relations, rhs)


def linprog_objective(lp):
    """
    Solves a LinearProgram with SciPy's HiGHS solver for comparisons.

    Returns:
        The optimal objective value or None if SciPy does not report an optimum.
    """

    sign = 1.0 if lp.sense == Sense.MIN else -1.0
    ub_rows = []
    ub_rhs = []
    eq_rows = []
    eq_rhs = []
    for row, relation, value in zip(lp.matrix, lp.relations, lp.rhs):
        if relation == Relation.LE:
            ub_rows.append(row)
            ub_rhs.append(value)
        elif relation == Relation.GE:
            ub_rows.append(-row)
            ub_rhs.append(-value)
        else:
            eq_rows.append(row)
            eq_rhs.append(value)

    bounds = [(None if low == -np.inf else low, None if up == np.inf else up)
              for low, up in zip(lp.lower, lp.upper)]
    result = linprog(sign * lp.objective, A_ub=np.array(ub_rows) if ub_rows else None,
                     b_ub=np.array(ub_rhs) if ub_rhs else None, A_eq=np.array(eq_rows) if eq_rows else None,
                     b_eq=np.array(eq_rhs) if eq_rhs else None, bounds=bounds, method='highs')
    if result.status != 0:
        return None
    return sign * result.fun


def linprog_in_hull(generators, b, tolerance=1e-7):
    """
    Independent VRS hull membership check: is there a convex combination of the generators that is
    componentwise at least b?
    """

    generators = np.asarray(generators, dtype=float)
    num_gen = generators.shape[0]
    result = linprog(np.zeros(num_gen), A_ub=-generators.T, b_ub=-np.asarray(b, dtype=float) + tolerance,
                     A_eq=np.ones((1, num_gen)), b_eq=[1.0], bounds=[(0, None)] * num_gen, method='highs')
    return result.status == 0


def brute_force_frame(dataset):
    """
    Frame of a dataset without duplicate points: the DMUs outside the VRS hull of all others.
    """

    points = dataset.translated
    frame = []
    for index in range(dataset.n):
        others = np.delete(points, index, axis=0)
        if others.shape[0] == 0 or not linprog_in_hull(others, points[index]):
            frame.append(index)
    return frame
