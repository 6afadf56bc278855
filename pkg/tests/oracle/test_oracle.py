from unittest import TestCase
from unittest.mock import patch

import numpy as np

from dea_frames.dea import Dataset, membership_test
from dea_frames.lib.labels import PointLabel
from dea_frames.lib.test_util import DEA5_FRAME, brute_force_frame, dea5_dataset, random_dataset
from dea_frames.lp import Algorithm, SimplexSolver
from dea_frames.oracle import classify_all


class Dea5OracleTest(TestCase):

    def test_labels(self):
        report = classify_all(dea5_dataset())

        self.assertEqual(report.labels, [PointLabel.EXTREME_EFFICIENT] * 3 + [PointLabel.INTERIOR] * 2)
        self.assertEqual(report.frame, DEA5_FRAME)
        self.assertEqual(report.boundary, DEA5_FRAME)
        self.assertEqual(report.interior, [3, 4])
        self.assertAlmostEqual(report.density, 0.6)

    def test_scores(self):
        for algorithm in Algorithm:
            with self.subTest(algorithm=algorithm):
                report = classify_all(dea5_dataset(), SimplexSolver(algorithm))
                np.testing.assert_allclose(report.scores, [1.0, 1.0, 1.0, 1.75, 3.0], atol=1e-9)

    def test_lp_count(self):
        # Two LPs per extreme DMU, three per interior one
        self.assertEqual(classify_all(dea5_dataset()).lp_count, 12)

    def test_dataframe(self):
        frame = classify_all(dea5_dataset()).to_dataframe()

        self.assertEqual(list(frame.columns), ['dmu', 'label', 'score'])
        self.assertEqual(list(frame['label']), ['extreme_efficient'] * 3 + ['interior'] * 2)
        self.assertAlmostEqual(frame['score'][3], 1.75)


class SpecialCasesTest(TestCase):

    def test_single_dmu(self):
        report = classify_all(Dataset('single', [[2.0, 3.0]], [[5.0]]))

        self.assertEqual(report.labels, [PointLabel.EXTREME_EFFICIENT])
        self.assertAlmostEqual(report.scores[0], 1.0)
        self.assertEqual(report.density, 1.0)

    def test_weakly_efficient(self):
        dataset = Dataset('weak', [[1.0], [2.0], [1.0]], [[1.0], [3.0], [0.5]])
        report = classify_all(dataset)

        self.assertEqual(report.labels[2], PointLabel.BOUNDARY_NONEXTREME)
        self.assertEqual(report.frame, [0, 1])
        self.assertEqual(report.boundary, [0, 1, 2])

    def test_non_extreme_efficient(self):
        # The midpoint of A(1,1) and C(3,5) is efficient, but not extreme
        dataset = Dataset('mid', [[1.0], [3.0], [2.0]], [[1.0], [5.0], [3.0]])
        report = classify_all(dataset)

        self.assertEqual(report.frame, [0, 1])
        self.assertEqual(report.labels[2], PointLabel.BOUNDARY_NONEXTREME)
        self.assertAlmostEqual(report.scores[2], 1.0)

    @patch('logging.warning')
    def test_duplicates(self, warning_mock):
        dataset = Dataset('dup', [[1.0], [2.0], [4.0], [3.0], [2.0], [2.0]],
                          [[1.0], [3.0], [4.0], [2.0], [1.0], [3.0]])
        report = classify_all(dataset)

        warning_mock.assert_called_once()
        self.assertEqual(report.representatives, [0, 1, 2, 3, 4])
        self.assertEqual(report.duplicates, {1: [5]})
        self.assertEqual(report.extreme_representatives, [0, 1, 2])
        self.assertEqual(report.labels[1], PointLabel.EXTREME_EFFICIENT)
        self.assertEqual(report.labels[5], PointLabel.BOUNDARY_NONEXTREME)
        self.assertEqual(report.frame, [0, 1, 2])
        self.assertEqual(report.boundary, [0, 1, 2, 5])
        self.assertAlmostEqual(report.density, 0.5)

    def test_two_identical_dmus(self):
        report = classify_all(Dataset('twins', [[2.0], [2.0]], [[3.0], [3.0]]))

        self.assertEqual(report.labels, [PointLabel.EXTREME_EFFICIENT, PointLabel.BOUNDARY_NONEXTREME])
        self.assertEqual(report.frame, [0])
        self.assertEqual(report.density, 0.5)

    def test_duplicate_frame_spans_dataset(self):
        dataset = Dataset('twin-frame', [[1.0], [4.0], [2.0], [2.0]], [[1.0], [4.0], [3.0], [3.0]])
        report = classify_all(dataset)
        solver = SimplexSolver()

        self.assertEqual(report.frame, [0, 1, 2])
        self.assertEqual(report.frame, report.extreme_representatives)
        self.assertAlmostEqual(report.density, len(report.frame) / dataset.n)
        for index in range(dataset.n):
            result = membership_test(dataset.translated[report.frame], dataset.translated[index], solver)
            self.assertTrue(result.is_member)

    def test_interior_duplicates(self):
        dataset = Dataset('dup', [[1.0], [4.0], [3.0], [3.0]], [[1.0], [4.0], [2.0], [2.0]])
        report = classify_all(dataset)

        self.assertEqual(report.labels[2:], [PointLabel.INTERIOR] * 2)
        self.assertEqual(report.frame, [0, 1])


class RandomOracleTest(TestCase):

    def test_against_brute_force(self):
        for seed in range(3):
            dataset = random_dataset(30, 2, 2, seed)
            with self.subTest(seed=seed):
                self.assertEqual(classify_all(dataset).frame, brute_force_frame(dataset))

    def test_workers(self):
        dataset = random_dataset(24, 2, 1, seed=9)
        sequential = classify_all(dataset)
        parallel = classify_all(dataset, workers=2)

        self.assertEqual(parallel.labels, sequential.labels)
        np.testing.assert_allclose(parallel.scores, sequential.scores)
        self.assertEqual(parallel.lp_count, sequential.lp_count)
