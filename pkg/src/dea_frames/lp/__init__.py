from .problem import Algorithm, LinearProgram, LpSolution, Relation, Sense, Status, dual_lp
from .simplex import (IterationLimitError, InternalSolverError, NumericalInstabilityError, SimplexSolver,
                      SolverError, solve)
