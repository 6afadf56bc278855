from .ehd import (EhdResult, StepMetrics, run_ehd, step2_boundary_of_subset, step3_exterior_partition,
                  step4_final_boundary)
