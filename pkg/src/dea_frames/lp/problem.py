import dataclasses
import enum

import numpy as np

from dea_frames.lib.exceptions import ContractError


class Sense(enum.Enum):

    MIN = 'min'
    MAX = 'max'

    def __str__(self):
        return self.value


class Relation(enum.Enum):

    LE = '<='
    GE = '>='
    EQ = '='

    def __str__(self):
        return self.value


class Algorithm(enum.Enum):
    """
    Pivoting scheme used by the simplex solver.
    """

    PRIMAL = 'primal'
    DUAL = 'dual'

    def __str__(self):
        return self.value


class Status(enum.Enum):

    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'

    def __str__(self):
        return self.value


def _as_enum(enum_cls, value):

    if isinstance(value, enum_cls):
        return value
    try:
        return enum_cls(value)
    except ValueError as e:
        raise ContractError(f'Invalid {enum_cls.__name__} "{value}"') from e


@dataclasses.dataclass(frozen=True, eq=False)
class LinearProgram:
    """
    Dense LP "optimize objective·x s.t. matrix·x (relations) rhs, lower <= x <= upper".

    All arrays are converted to read-only float arrays on construction. Lower bounds default to 0, upper
    bounds to +inf; a lower bound of -inf makes a variable free below.
    """

    sense: Sense
    objective: np.ndarray
    matrix: np.ndarray
    relations: tuple
    rhs: np.ndarray
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        objective = np.array(self.objective, dtype=float).reshape(-1)
        num_vars = objective.shape[0]
        matrix = np.array(self.matrix, dtype=float)
        if matrix.size == 0:
            matrix = matrix.reshape(0, num_vars)
        rhs = np.array(self.rhs, dtype=float).reshape(-1)
        relations = tuple(_as_enum(Relation, r) for r in self.relations)

        if matrix.ndim != 2 or matrix.shape[1] != num_vars:
            raise ContractError('Constraint matrix must have one column per objective coefficient')
        if matrix.shape[0] != rhs.shape[0] or len(relations) != rhs.shape[0]:
            raise ContractError('Constraint matrix, relations and rhs must have the same number of rows')

        lower = np.zeros(num_vars) if self.lower is None else np.array(self.lower, dtype=float).reshape(-1)
        upper = np.full(num_vars, np.inf) if self.upper is None else \
            np.array(self.upper, dtype=float).reshape(-1)
        if lower.shape[0] != num_vars or upper.shape[0] != num_vars:
            raise ContractError('Bounds must have one entry per variable')

        for name, values in (('objective', objective), ('matrix', matrix), ('rhs', rhs)):
            if not np.all(np.isfinite(values)):
                raise ContractError(f'LP {name} contains non-finite coefficients')
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)) or np.any(lower == np.inf) or \
           np.any(upper == -np.inf):
            raise ContractError('Invalid variable bounds')
        if np.any(lower > upper):
            raise ContractError('Lower bound above upper bound')

        for array in (objective, matrix, rhs, lower, upper):
            array.setflags(write=False)

        object.__setattr__(self, 'sense', _as_enum(Sense, self.sense))
        object.__setattr__(self, 'objective', objective)
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'relations', relations)
        object.__setattr__(self, 'rhs', rhs)
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @property
    def num_rows(self):
        return self.matrix.shape[0]

    @property
    def num_vars(self):
        return self.objective.shape[0]

    def has_default_bounds(self):
        return bool(np.all(self.lower == 0) and np.all(self.upper == np.inf))


@dataclasses.dataclass(eq=False)
class LpSolution:
    """
    Result of a simplex solve.

    `dual` holds one value per constraint row with the convention dual_i = d(objective*)/d(rhs_i), so for a
    minimization a binding ">=" row has a non-negative dual. `primal` and `dual` are None unless the status
    is optimal. Residuals are measured on the standard form actually pivoted on.
    """

    status: Status
    objective_value: float
    primal: np.ndarray
    dual: np.ndarray
    iterations: int
    pivot_rule_used: Algorithm
    phase1_iterations: int = 0
    bland_activated: bool = False
    basis: tuple = ()
    primal_residual: float = 0.0
    dual_residual: float = 0.0
    gap: float = 0.0

    @property
    def is_optimal(self):
        return self.status == Status.OPTIMAL


def dual_lp(lp):
    """
    Constructs the explicit LP dual of a program whose variables all have the default bounds [0, inf).

    The dual variables follow the same sign convention as `LpSolution.dual`, so the optimal dual solution
    of the returned program is directly comparable to the dual vector reported for `lp`.
    """

    if not lp.has_default_bounds():
        raise ContractError('Explicit dual only supported for non-negative variables')

    num_rows = lp.num_rows
    lower = np.zeros(num_rows)
    upper = np.zeros(num_rows)
    for i, relation in enumerate(lp.relations):
        if relation == Relation.EQ:
            lower[i], upper[i] = -np.inf, np.inf
        elif (relation == Relation.GE) == (lp.sense == Sense.MIN):
            lower[i], upper[i] = 0.0, np.inf
        else:
            lower[i], upper[i] = -np.inf, 0.0

    if lp.sense == Sense.MIN:
        sense, relation = Sense.MAX, Relation.LE
    else:
        sense, relation = Sense.MIN, Relation.GE

    return LinearProgram(sense=sense, objective=lp.rhs, matrix=lp.matrix.T,
                         relations=(relation,) * lp.num_vars, rhs=lp.objective, lower=lower, upper=upper)
