from unittest import TestCase

import numpy as np

from dea_frames.datagen import GenSpec, generate
from dea_frames.lib.exceptions import ContractError
from dea_frames.lib.test_util import DEA5_FRAME, dea5_dataset, random_dataset
from dea_frames.lp import InternalSolverError
from dea_frames.oracle import classify_all
from dea_frames.phase2 import score_all, score_phase2


class ScorePhase2Test(TestCase):

    def test_dea5(self):
        table = score_phase2(dea5_dataset(), DEA5_FRAME)

        self.assertEqual(sorted(table.scores), [3, 4])
        self.assertAlmostEqual(table.scores[3], 1.75)
        self.assertAlmostEqual(table.scores[4], 3.0)
        self.assertEqual(table.lp_size, 3)
        self.assertEqual(table.lp_count, 2)
        self.assertEqual(len(table), 2)

    def test_nothing_to_score(self):
        table = score_phase2(dea5_dataset(), range(5))

        self.assertEqual(table.scores, {})
        self.assertEqual(table.lp_count, 0)

    def test_overlap(self):
        with self.assertRaises(ContractError):
            score_all(dea5_dataset(), [0, 1, 2], [2, 3])

    def test_reference_not_spanning(self):
        # Nothing in the hull of B and C uses as little input as A
        with self.assertRaises(InternalSolverError):
            score_all(dea5_dataset(), [1, 2], [0])

    def test_matches_oracle(self):
        dataset = random_dataset(40, 2, 2, seed=31)
        report = classify_all(dataset)
        table = score_phase2(dataset, report.frame)

        for target, phi in table.scores.items():
            self.assertAlmostEqual(phi, report.scores[target], delta=1e-6)
        self.assertTrue(np.all(np.array(list(table.scores.values())) >= 1.0 - 1e-9))

    def test_frame_and_boundary_agree(self):
        dataset = generate(GenSpec(60, 2, 1, 0.25, 8, inject_boundary=3))
        report = classify_all(dataset)
        self.assertGreater(len(report.boundary), len(report.frame))

        from_frame = score_phase2(dataset, report.frame)
        from_boundary = score_phase2(dataset, report.boundary)

        self.assertEqual(from_frame.lp_size, len(report.frame))
        self.assertEqual(from_boundary.lp_size, len(report.boundary))
        self.assertGreater(len(from_frame), len(from_boundary))
        for target, phi in from_boundary.scores.items():
            self.assertAlmostEqual(phi, from_frame.scores[target], delta=1e-6)
        for target in set(report.boundary) - set(report.frame):
            self.assertAlmostEqual(from_frame.scores[target], 1.0, delta=1e-6)
