from __future__ import annotations

from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings as hypothesis_settings, strategies as st

from aoforge.apps.expectation.services import (
    area,
    closed_form_check,
    enumerate_parking_functions,
    expectation_report,
    expected_ao_bruteforce,
    expected_ao_formula,
    max_area_census,
    support,
)
from aoforge.apps.expectation.structures import ParkingFunction
from aoforge.core.exceptions import InvalidArgument, ResourceLimit


class ParkingFunctionTests(SimpleTestCase):
    def test_small_cases(self) -> None:
        self.assertEqual([a.values for a in enumerate_parking_functions(1)], [(0,)])
        self.assertEqual([a.values for a in enumerate_parking_functions(2)], [(0, 0), (0, 1), (1, 0)])
        self.assertEqual(len(enumerate_parking_functions(3)), 16)
        self.assertEqual(len(enumerate_parking_functions(5)), 1296)

    def test_validation(self) -> None:
        for values in ((2, 0), (1, 1), (-1, 0)):
            with self.subTest(values=values), self.assertRaises(InvalidArgument):
                ParkingFunction(values)
        with self.assertRaises(InvalidArgument):
            enumerate_parking_functions(0)

    def test_area_and_support(self) -> None:
        self.assertEqual(area((1, 0, 2)), 3)
        self.assertEqual(support((1, 0, 2)), {1, 3})
        self.assertEqual(ParkingFunction((1, 0, 2)).support, {1, 3})

    def test_area_census(self) -> None:
        for n in (1, 2, 3, 4):
            with self.subTest(n=n):
                self.assertTrue(max_area_census(n).passed)

    @override_settings(AOFORGE_GUARD_RAILS={**settings.AOFORGE_GUARD_RAILS, "parking_n": 2})
    def test_guard(self) -> None:
        with self.assertRaises(ResourceLimit):
            enumerate_parking_functions(3)


class ExpectedOrientationTests(SimpleTestCase):
    def test_two_vertices(self) -> None:
        self.assertEqual(expected_ao_formula(2, "1/2"), Fraction(3, 2))
        self.assertEqual(expected_ao_bruteforce(2, Fraction(1, 2)), Fraction(3, 2))
        self.assertTrue(closed_form_check().passed)

    def test_single_vertex(self) -> None:
        self.assertEqual(expected_ao_formula(1, "1/3"), 1)
        self.assertEqual(expected_ao_bruteforce(1, "9/10"), 1)

    def test_bruteforce_endpoints(self) -> None:
        self.assertEqual(expected_ao_bruteforce(3, 0), 1)
        self.assertEqual(expected_ao_bruteforce(3, 1), 6)

    def test_formula_needs_an_open_interval(self) -> None:
        for p in ("0", "1", "3/2", "-1/2"):
            with self.subTest(p=p), self.assertRaises(InvalidArgument):
                expected_ao_formula(2, p)
        with self.assertRaises(InvalidArgument):
            expected_ao_bruteforce(2, "2")

    @hypothesis_settings(max_examples=20, deadline=None)
    @given(
        st.integers(min_value=1, max_value=4),
        st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=50),
    )
    def test_formula_matches_bruteforce(self, n: int, p: Fraction) -> None:
        self.assertEqual(expected_ao_formula(n, p), expected_ao_bruteforce(n, p))

    def test_report(self) -> None:
        report = expectation_report(3)
        self.assertTrue(report.passed)

    @override_settings(AOFORGE_GUARD_RAILS={**settings.AOFORGE_GUARD_RAILS, "bruteforce_n": 3})
    def test_bruteforce_guard(self) -> None:
        with self.assertRaises(ResourceLimit):
            expected_ao_bruteforce(4, "1/2")
