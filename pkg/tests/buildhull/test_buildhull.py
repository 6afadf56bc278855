import itertools
from unittest import TestCase
from unittest.mock import Mock, patch

import numpy as np

from dea_frames.buildhull import build_hull, check_extreme, translate_hyperplane
from dea_frames.datagen import GenSpec, generate
from dea_frames.lib.exceptions import ContractError
from dea_frames.lib.test_util import DEA5_FRAME, brute_force_frame, dea5_dataset, random_dataset
from dea_frames.lp import Algorithm, InternalSolverError, SimplexSolver
from dea_frames.preprocess import OrderKind, preprocess, processing_order


def run_default(dataset, solver=None, kind=OrderKind.ASCENDING, order_seed=None):
    prep = preprocess(dataset)
    remaining = [i for i in range(dataset.n) if i not in prep.extreme_seed]
    order = processing_order(prep, remaining, kind, order_seed)
    return prep, build_hull(dataset, prep.extreme_seed, order, solver)


class Dea5Test(TestCase):

    def test_frame(self):
        for algorithm in Algorithm:
            with self.subTest(algorithm=algorithm):
                _, result = run_default(dea5_dataset(), SimplexSolver(algorithm))

                self.assertEqual(result.frame, DEA5_FRAME)
                self.assertEqual(result.admission_order, [0, 2, 1])
                self.assertEqual(result.m_hat, 2)
                self.assertEqual(result.lp_count, 3)
                self.assertEqual(result.lp_sizes, [2, 2, 2])
                self.assertEqual(result.lp_columns, [3, 3, 3])
                self.assertEqual(result.avg_lp_size, 2.0)
                self.assertEqual(result.hyperplane_translations, 1)
                self.assertEqual(result.inner_products, 1)
                self.assertEqual(result.retest_count, 0)

    def test_retest(self):
        # Starting from A alone, the hyperplane separating D exposes C first, so D gets tested twice
        result = build_hull(dea5_dataset(), [0], [4, 3, 2, 1])

        self.assertEqual(result.frame, DEA5_FRAME)
        self.assertEqual(result.admission_order, [0, 2, 1])
        self.assertEqual(result.lp_count, 4)
        self.assertEqual(result.lp_sizes, [1, 1, 2, 2])
        self.assertEqual(result.hyperplane_translations, 2)
        self.assertEqual(result.retest_count, 1)
        self.assertEqual(result.inner_products, 3 + 1)

    def test_exact_ties(self):
        prep = preprocess(dea5_dataset())
        result = build_hull(dea5_dataset(), prep.extreme_seed, [3, 4, 1], exact_ties=True, verify_init=True)

        self.assertEqual(result.frame, DEA5_FRAME)
        self.assertEqual(result.tie_lp_count, 0)

    @patch('dea_frames.buildhull.buildhull.get_monotonic_time')
    def test_timing(self, time_mock):
        time_mock.side_effect = itertools.count(0.0, 0.5)
        result = build_hull(dea5_dataset(), [0, 2], [3, 4, 1])

        # Start, two calls per LP, two for the translation, end
        self.assertEqual(time_mock.call_count, 10)
        self.assertEqual(result.wall_time, 4.5)
        self.assertEqual(result.membership_time, 1.5)
        self.assertEqual(result.hyperplane_time, 0.5)


class ContractTest(TestCase):

    def test_empty_init(self):
        with self.assertRaises(ContractError):
            build_hull(dea5_dataset(), [], [0, 1, 2, 3, 4])

    def test_duplicate_init(self):
        with self.assertRaises(ContractError):
            build_hull(dea5_dataset(), [0, 0], [1, 2, 3, 4])

    def test_incomplete_order(self):
        with self.assertRaises(ContractError):
            build_hull(dea5_dataset(), [0, 2], [1, 3])
        with self.assertRaises(ContractError):
            build_hull(dea5_dataset(), [0, 2], [1, 2, 3, 4])

    def test_verify_init(self):
        with self.assertRaises(ContractError):
            build_hull(dea5_dataset(), [0, 3], [1, 2, 4], verify_init=True)

    def test_check_extreme(self):
        dataset = dea5_dataset()
        check_extreme(dataset, DEA5_FRAME, SimplexSolver())

        with self.assertRaisesRegex(ContractError, 'DMU 4'):
            check_extreme(dataset, [0, 4], SimplexSolver())


class TranslateHyperplaneTest(TestCase):

    def setUp(self):
        self.points = np.array([[-3.0, 4.0], [-2.0, 4.0], [-2.0, 4.0], [-1.0, 1.0]])

    def test_maximizer(self):
        index, products = translate_hyperplane(np.array([1.0, 0.0]), 1.5, [0, 1, 3], self.points, 1e-6)

        self.assertEqual(index, 3)
        self.assertEqual(products, 3)

    def test_lexicographic_tie(self):
        index, _ = translate_hyperplane(np.array([0.0, 1.0]), -1.0, [0, 1, 2, 3], self.points, 1e-6)
        self.assertEqual(index, 1)

    def test_tie_resolver(self):
        resolver = Mock(return_value=0)
        index, _ = translate_hyperplane(np.array([0.0, 1.0]), -1.0, [0, 1, 2, 3], self.points, 1e-6,
                                        resolver)

        self.assertEqual(index, 0)
        tied = resolver.call_args[0][0]
        self.assertEqual(list(tied), [1, 2, 0])

    def test_invalid_certificate(self):
        with self.assertRaises(InternalSolverError):
            translate_hyperplane(np.array([0.0, 1.0]), -4.0, [0, 1, 3], self.points, 1e-6)

    def test_no_candidates(self):
        with self.assertRaises(ContractError):
            translate_hyperplane(np.array([0.0, 1.0]), 0.0, [], self.points, 1e-6)


class RandomInstancesTest(TestCase):

    def test_oracle_equivalence(self):
        for seed, (m1, m2) in enumerate([(1, 2), (2, 2), (3, 1), (2, 3)]):
            dataset = random_dataset(40, m1, m2, seed)
            prep, result = run_default(dataset)

            with self.subTest(seed=seed):
                self.assertEqual(result.frame, brute_force_frame(dataset))
                self.assertEqual(result.lp_count, dataset.n - prep.m_hat)
                self.assertEqual(result.hyperplane_translations, len(result.frame) - prep.m_hat)
                self.assertEqual(result.admission_order[:prep.m_hat], prep.extreme_seed)

    def test_lp_sizes_grow_to_frame(self):
        dataset = random_dataset(50, 2, 2, seed=11)
        _, result = run_default(dataset)

        self.assertTrue(all(a <= b for a, b in zip(result.lp_sizes, result.lp_sizes[1:])))
        self.assertLessEqual(result.lp_sizes[-1], len(result.frame))

    def test_nested_partial_frames(self):
        dataset = random_dataset(40, 2, 1, seed=12)
        _, result = run_default(dataset)
        frame = set(result.frame)

        for size in range(result.m_hat, len(result.admission_order) + 1):
            self.assertTrue(set(result.admission_order[:size]) <= frame)

    def test_order_invariance(self):
        dataset = random_dataset(40, 2, 2, seed=13)
        _, reference = run_default(dataset)

        for order_seed in range(10):
            with self.subTest(order_seed=order_seed):
                _, result = run_default(dataset, kind=OrderKind.RANDOM, order_seed=order_seed)
                self.assertEqual(result.frame, reference.frame)
                self.assertEqual(result.lp_count, reference.lp_count)

    def test_dual_simplex(self):
        dataset = random_dataset(40, 2, 2, seed=14)
        _, primal = run_default(dataset, SimplexSolver(Algorithm.PRIMAL))
        _, dual = run_default(dataset, SimplexSolver(Algorithm.DUAL))

        self.assertEqual(primal.frame, dual.frame)

    def test_ascending_order_keeps_lps_small(self):
        for seed in range(5):
            dataset = generate(GenSpec(300, 2, 2, 0.25, seed))
            _, ascending = run_default(dataset)
            _, descending = run_default(dataset, kind=OrderKind.DESCENDING)

            with self.subTest(seed=seed):
                self.assertEqual(ascending.frame, descending.frame)
                self.assertLessEqual(ascending.avg_lp_size, descending.avg_lp_size)
