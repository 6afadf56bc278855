import dataclasses


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """
    Numerical thresholds shared by the simplex solver and the classification tests.

    Attributes:
        feas: Primal and dual feasibility residual accepted for an optimal solution.
        gap: Accepted absolute difference between primal and dual objective.
        pivot: Pivot elements with a smaller magnitude are never used.
        member: Threshold on delta, phi - 1 and t above which a point counts as outside/dominated.
        stall_limit: Number of consecutive degenerate pivots after which Bland's rule takes over.
        max_iterations: Hard limit for pivots per solve, None derives a limit from the problem size.
    """

    feas: float = 1e-7
    gap: float = 1e-6
    pivot: float = 1e-9
    member: float = 1e-6
    stall_limit: int = 1000
    max_iterations: int = None

    def __post_init__(self):
        for name in ('feas', 'gap', 'pivot', 'member'):
            if not getattr(self, name) > 0:
                raise ValueError(f'Tolerance "{name}" must be positive')
        if self.stall_limit < 1:
            raise ValueError('Stall limit must be at least 1')
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError('Iteration limit must be at least 1')

    @classmethod
    def from_args(cls, args):
        """
        Builds Tolerances from the arguments added by `lib.args.get_arg_parser()`.
        """

        return cls(feas=args.feas_tol, gap=args.gap_tol, pivot=args.pivot_tol, member=args.member_tol,
                   stall_limit=args.stall_limit, max_iterations=args.max_iterations)


DEFAULT_TOLERANCES = Tolerances()
