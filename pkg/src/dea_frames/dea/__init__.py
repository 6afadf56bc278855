from .classification import (BoundaryResult, ExteriorResult, MembershipResult, ScoreResult, boundary_test,
                             dominance_test, exterior_test_step3, membership_test, output_score)
from .dataset import Dataset, translate_point
from .models import build_membership_lp, build_output_oriented_vrs, build_strict_dominance_lp
