"""
Builders for the three LP models used to classify DMUs. All of them are built fresh for every solve; the
first `len(reference)` variables are always the convex weights lambda.
"""

import numpy as np

from dea_frames.lib.exceptions import ContractError
from dea_frames.lp import LinearProgram, Relation, Sense


def build_membership_lp(generators, b):
    """
    Builds "min delta s.t. sum_i a^i lambda_i + e delta >= b, sum_i lambda_i = 1, lambda, delta >= 0".

    Its optimum is 0 exactly if b is in the VRS hull of the generators. The variables are
    (lambda_1, ..., lambda_k, delta); the rows are the m coverage rows followed by the convexity row.
    """

    generators = np.asarray(generators, dtype=float)
    if generators.ndim == 1:
        generators = generators.reshape(1, -1)
    b = np.asarray(b, dtype=float).reshape(-1)
    num_gen, dim = generators.shape
    if num_gen == 0:
        raise ContractError('Membership test needs at least one generator')
    if dim != b.shape[0]:
        raise ContractError('Test point and generators differ in dimension')

    matrix = np.zeros((dim + 1, num_gen + 1))
    matrix[:dim, :num_gen] = generators.T
    matrix[:dim, num_gen] = 1.0
    matrix[dim, :num_gen] = 1.0
    objective = np.zeros(num_gen + 1)
    objective[num_gen] = 1.0
    relations = (Relation.GE,) * dim + (Relation.EQ,)
    rhs = np.append(b, 1.0)

    return LinearProgram(Sense.MIN, objective, matrix, relations, rhs)


def _check_reference(reference, dataset):

    reference = np.asarray(reference, dtype=int).reshape(-1)
    if reference.size == 0:
        raise ContractError('Reference set must not be empty')
    if reference.min() < 0 or reference.max() >= dataset.n:
        raise ContractError('Reference index out of range')
    return reference


def build_output_oriented_vrs(reference, dataset, target, deleted_domain):
    """
    Builds the output-oriented VRS envelopment model "max phi s.t. sum_j X_j lambda_j <= X_t,
    sum_j Y_j lambda_j >= phi Y_t, sum_j lambda_j = 1, lambda >= 0" over the reference DMUs.

    Args:
        reference: Indices of the reference DMUs.
        dataset: The Dataset.
        target: Index of the evaluated DMU.
        deleted_domain: Whether the target is required to be absent from the reference set (True) or
                        present in it (False).
    """

    reference = _check_reference(reference, dataset)
    in_reference = bool(np.any(reference == target))
    if deleted_domain and in_reference:
        raise ContractError(f'Target {target} is part of the reference set of a deleted-domain model')
    if not deleted_domain and not in_reference:
        raise ContractError(f'Target {target} is missing from the reference set')

    m1, m2 = dataset.m1, dataset.m2
    num_ref = reference.size
    matrix = np.zeros((m1 + m2 + 1, num_ref + 1))
    matrix[:m1, :num_ref] = dataset.inputs[reference].T
    matrix[m1:m1+m2, :num_ref] = dataset.outputs[reference].T
    matrix[m1:m1+m2, num_ref] = -dataset.outputs[target]
    matrix[m1+m2, :num_ref] = 1.0
    objective = np.zeros(num_ref + 1)
    objective[num_ref] = 1.0
    relations = (Relation.LE,) * m1 + (Relation.GE,) * m2 + (Relation.EQ,)
    rhs = np.concatenate((dataset.inputs[target], np.zeros(m2), [1.0]))

    return LinearProgram(Sense.MAX, objective, matrix, relations, rhs)


def build_strict_dominance_lp(reference, dataset, target):
    """
    Builds "max t s.t. sum_j a^j lambda_j - t e >= a^target, sum_j lambda_j = 1, lambda >= 0, t free".

    A positive optimum means that some point of the reference hull is better than the target in every
    translated coordinate, i.e. the target lies in the hull's interior.
    """

    reference = _check_reference(reference, dataset)
    dim = dataset.m
    num_ref = reference.size
    matrix = np.zeros((dim + 1, num_ref + 1))
    matrix[:dim, :num_ref] = dataset.translated[reference].T
    matrix[:dim, num_ref] = -1.0
    matrix[dim, :num_ref] = 1.0
    objective = np.zeros(num_ref + 1)
    objective[num_ref] = 1.0
    relations = (Relation.GE,) * dim + (Relation.EQ,)
    rhs = np.append(dataset.translated[target], 1.0)
    lower = np.zeros(num_ref + 1)
    lower[num_ref] = -np.inf

    return LinearProgram(Sense.MAX, objective, matrix, relations, rhs, lower=lower)
