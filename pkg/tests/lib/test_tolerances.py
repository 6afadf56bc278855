import dataclasses
from unittest import TestCase

from dea_frames.lib.tolerances import DEFAULT_TOLERANCES, Tolerances


class TolerancesTest(TestCase):

    def test_defaults(self):
        self.assertEqual(DEFAULT_TOLERANCES.feas, 1e-7)
        self.assertEqual(DEFAULT_TOLERANCES.gap, 1e-6)
        self.assertEqual(DEFAULT_TOLERANCES.pivot, 1e-9)
        self.assertEqual(DEFAULT_TOLERANCES.member, 1e-6)
        self.assertEqual(DEFAULT_TOLERANCES.stall_limit, 1000)
        self.assertIsNone(DEFAULT_TOLERANCES.max_iterations)

    def test_immutable(self):
        with self.assertRaises(dataclasses.FrozenInstanceError):
            DEFAULT_TOLERANCES.feas = 1.0    # pylint: disable=assigning-non-slot

    def test_invalid(self):
        with self.assertRaises(ValueError):
            Tolerances(feas=0.0)
        with self.assertRaises(ValueError):
            Tolerances(member=-1e-6)
        with self.assertRaises(ValueError):
            Tolerances(stall_limit=0)
        with self.assertRaises(ValueError):
            Tolerances(max_iterations=0)
