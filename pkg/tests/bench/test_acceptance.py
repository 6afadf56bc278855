"""
End-to-end checks on generated instances. They take minutes and only run with DEA_SLOW_TESTS=1.
"""

import itertools
from unittest import TestCase

from dea_frames.bench.runs import execute_run
from dea_frames.buildhull import build_hull
from dea_frames.datagen import GenSpec, generate
from dea_frames.ehd import run_ehd
from dea_frames.lib.test_util import slow_test
from dea_frames.lp import SimplexSolver
from dea_frames.oracle import classify_all
from dea_frames.phase2 import score_phase2
from dea_frames.preprocess import default_subset_size, preprocess, processing_order


def oracle_instances():
    dimensions = [(2, 1), (2, 2), (3, 3)]
    grid = itertools.product((200, 500, 1000), dimensions, (0.01, 0.1, 0.25), (1, 2))
    for n, (m1, m2), density, seed in grid:
        yield GenSpec(n, m1, m2, density, seed)


@slow_test
class OracleEquivalenceTest(TestCase):

    def test_frames_and_identities(self):
        solver = SimplexSolver()

        for spec in oracle_instances():
            with self.subTest(instance=spec.name, seed=spec.seed):
                dataset = generate(spec)
                oracle = classify_all(dataset, solver)
                prep = preprocess(dataset)
                seed = set(prep.extreme_seed)
                order = processing_order(prep, [i for i in range(dataset.n) if i not in seed])

                frame_result = build_hull(dataset, prep.extreme_seed, order, solver)
                p = min(default_subset_size(dataset.n, prep.m_hat), dataset.n)
                ehd_result = run_ehd(dataset, p, prep, solver)

                self.assertEqual(frame_result.frame, oracle.frame)
                self.assertEqual(ehd_result.boundary, oracle.frame)

                frame_size = len(frame_result.frame)
                self.assertEqual(frame_result.lp_count, dataset.n - prep.m_hat)
                self.assertEqual(frame_result.hyperplane_translations, frame_size - prep.m_hat)
                self.assertEqual(ehd_result.step2.lp_count, p - prep.m_hat)
                self.assertEqual(ehd_result.step3.lp_count, dataset.n - p)
                self.assertEqual(ehd_result.step4.lp_count,
                                 len(ehd_result.subset_boundary) + len(ehd_result.exterior) - prep.m_hat)
                step4_count = ehd_result.step4.lp_count
                self.assertEqual(ehd_result.total_lp_count, dataset.n - prep.m_hat + step4_count)
                self.assertEqual(ehd_result.step2.lp_count + ehd_result.step3.lp_count,
                                 frame_result.lp_count)

                self.assertGreaterEqual(ehd_result.step4.lp_size, frame_size)
                sizes = frame_result.lp_sizes
                self.assertTrue(all(a <= b for a, b in zip(sizes, sizes[1:])))
                self.assertLessEqual(max(sizes), frame_size)

    def test_phase2_scores(self):
        solver = SimplexSolver()

        specs = [GenSpec(300, 2, 2, 0.1, 3, inject_boundary=5),
                 GenSpec(300, 3, 1, 0.25, 4, inject_boundary=8)]
        for spec in specs:
            with self.subTest(instance=spec.name):
                dataset = generate(spec)
                oracle = classify_all(dataset, solver)
                self.assertGreater(len(oracle.boundary), len(oracle.frame))

                for reference in (oracle.frame, oracle.boundary):
                    table = score_phase2(dataset, reference, solver)
                    for dmu, phi in table.scores.items():
                        self.assertAlmostEqual(phi, oracle.scores[dmu], delta=1e-6)


@slow_test
class PerformanceTest(TestCase):

    def test_buildhull_faster_at_high_density(self):
        solver = SimplexSolver()

        for m1, m2 in ((3, 2), (5, 5)):
            for seed in (1, 2, 3):
                with self.subTest(m1=m1, m2=m2, seed=seed):
                    dataset = generate(GenSpec(5000, m1, m2, 0.25, seed))
                    buildhull_record = execute_run(dataset, 'buildhull', solver).record
                    ehd_record = execute_run(dataset, 'ehd', solver).record

                    self.assertLess(buildhull_record.total_time, ehd_record.total_time)
                    self.assertLess(buildhull_record.hyperplane_time / buildhull_record.total_time, 0.1)

    def test_time_grows_with_cardinality_and_density(self):
        solver = SimplexSolver()
        densities = (0.01, 0.1, 0.25)
        cardinalities = (1000, 5000)

        times = {}
        for (m1, m2), density, n in itertools.product(((3, 2), (5, 5)), densities, cardinalities):
            dataset = generate(GenSpec(n, m1, m2, density, 1))
            for procedure in ('buildhull', 'ehd'):
                record = execute_run(dataset, procedure, solver).record
                times[procedure, m1 + m2, density, n] = record.total_time

        for procedure, m in itertools.product(('buildhull', 'ehd'), (5, 10)):
            with self.subTest(procedure=procedure, m=m):
                for density in densities:
                    by_n = [times[procedure, m, density, n] for n in cardinalities]
                    self.assertLess(by_n[0], by_n[1])
                for n in cardinalities:
                    by_density = [times[procedure, m, density, n] for density in densities]
                    self.assertLess(by_density[0], by_density[1])
                    self.assertLess(by_density[1], by_density[2])
