# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import math
import unittest

import numpy as np

from hardy_certify.discretize import (
    GeometricSeq,
    build_discretizing_sequence,
    check_dyadic_summation,
    check_geometric_equivalences,
    check_interval_equivalences,
    graded_grid,
)
from hardy_certify.errors import IndexMismatch, RangeError
from hardy_certify.measure_core import ExponentSet, IntervalSpec, ProblemSpec, QuadSettings, WeightExpr, tail_W

UNIT = IntervalSpec(0.0, 1.0)
HALF_LINE = IntervalSpec(0.0, math.inf)
ONE = WeightExpr.power(1.0, 0.0)
ZERO = WeightExpr.power(0.0, 0.0)


def _unit_sequence(k_max=12):
    return build_discretizing_sequence(ONE.on(UNIT), UNIT, K_max=k_max)


class DiscretizingSequenceTests(unittest.TestCase):
    def test_constant_weight(self):
        seq = _unit_sequence()
        self.assertEqual(seq.N, 0)
        self.assertEqual(seq.point(0), 0.0)
        self.assertEqual(seq.K, 12)
        expected = [1.0 - 2.0 ** -k for k in seq.indices]
        np.testing.assert_allclose(seq.points, expected, rtol=0, atol=1e-9)

    def test_exponential_weight(self):
        w = WeightExpr.exp_scale(1.0, -1.0).on(HALF_LINE)
        seq = build_discretizing_sequence(w, HALF_LINE, K_max=10)
        self.assertEqual(seq.N, 0)
        expected = [k * math.log(2.0) for k in seq.indices]
        np.testing.assert_allclose(seq.points, expected, rtol=0, atol=1e-8)

    def test_linear_weight(self):
        seq = build_discretizing_sequence(WeightExpr.power(2.0, 1.0).on(UNIT), UNIT, K_max=10)
        self.assertEqual(seq.N, 0)
        expected = [math.sqrt(1.0 - 2.0 ** -k) for k in seq.indices]
        np.testing.assert_allclose(seq.points, expected, rtol=0, atol=1e-8)

    def test_negative_start(self):
        seq = build_discretizing_sequence(WeightExpr.power(3.0, 0.0).on(UNIT), UNIT, K_max=6)
        self.assertEqual(seq.N, -2)
        self.assertAlmostEqual(seq.point(-1), 1.0 / 3.0, delta=1e-9)

    def test_unbounded_tail_truncates_left(self):
        seq = build_discretizing_sequence(WeightExpr.power(1.0, -2.0).on(UNIT), UNIT, K_max=8)
        self.assertIsNone(seq.N)
        self.assertEqual(seq.to_dict()["N"], "-inf")
        self.assertLess(seq.start, 0)
        targets = [2.0 ** -k for k in seq.indices]
        np.testing.assert_allclose(seq.values, targets, rtol=1e-8)

    def test_nearly_critical_weight(self):
        # W(x) = 10 (1 - x^0.1), so W(0) = 10 puts N at -4
        w = WeightExpr.power(1.0, -0.9).on(UNIT)
        seq = build_discretizing_sequence(w, UNIT, K_max=10)
        self.assertEqual(seq.N, -4)
        self.assertEqual(seq.point(-4), 0.0)
        self.assertAlmostEqual(seq.values[0], 10.0, delta=1e-8)
        self.assertAlmostEqual(seq.point(-3), 0.2 ** 10, delta=1e-6 * 0.2 ** 10)
        ks = [k for k in seq.indices if k > seq.N]
        expected = [(1.0 - 2.0 ** -k / 10.0) ** 10 for k in ks]
        np.testing.assert_allclose([seq.point(k) for k in ks], expected, rtol=1e-6)
        np.testing.assert_allclose(seq.values[1:], [2.0 ** -k for k in ks], rtol=1e-8)

    def test_stable_under_tighter_quadrature(self):
        tight = QuadSettings(rel_tol=5e-13)
        for w in (ONE, WeightExpr.power(2.0, 1.0), WeightExpr.power(1.0, -0.9)):
            w = w.on(UNIT)
            seq = build_discretizing_sequence(w, UNIT, K_max=10)
            refined = build_discretizing_sequence(w, UNIT, K_max=10, settings=tight)
            self.assertEqual(refined.indices, seq.indices)
            moved = np.abs(np.subtract(refined.points, seq.points))
            self.assertLessEqual(float(np.max(moved)), 1e-6 * (UNIT.b - UNIT.a))

    def test_sharpness(self):
        w = WeightExpr.power(2.0, 1.0).on(UNIT)
        seq = build_discretizing_sequence(w, UNIT, K_max=16)
        for k in seq.indices:
            if k > seq.N:
                self.assertLessEqual(abs(tail_W(w, seq.point(k)) * 2.0 ** k - 1.0), 2e-9)

    def test_graded_grid_contains_sequence(self):
        spec = ProblemSpec(UNIT, ExponentSet(1.0, 1.0, 1.0), ONE, ONE, ONE, k_max=12, cell_points=8)
        grid = graded_grid(spec)
        np.testing.assert_array_equal(grid.nodes[grid.marks], grid.seq.points)
        self.assertTrue(np.all(np.diff(grid.nodes) > 0))
        self.assertEqual(grid.w_end, 0.0)


class GeometricEquivalenceTests(unittest.TestCase):
    def test_sum_sum_halving(self):
        tau = GeometricSeq.powers(0.5, 0, 21)
        report = check_geometric_equivalences(tau, [1.0] * 21, 1.0)
        self.assertAlmostEqual(report["sum-sum"].lhs, 4.0, delta=1e-4)
        self.assertAlmostEqual(report["sum-sum"].rhs, 2.0, delta=1e-5)
        self.assertAlmostEqual(report["sum-sum"].ratio, 2.0, delta=1e-4)
        self.assertTrue(all(entry.ok for entry in report.values()))

    def test_single_spike(self):
        a = [0.0] * 21
        a[5] = 1.0
        report = check_geometric_equivalences(GeometricSeq.powers(0.5, 0, 21), a, 1.0)
        self.assertEqual(report["sup-sum"].ratio, 1.0)

    def test_growing_sequence(self):
        tau = GeometricSeq.powers(1.0 / 3.0, 0, 21)
        report = check_geometric_equivalences(tau, [2.0 ** k for k in range(21)], 1.0)
        for entry in report.values():
            self.assertTrue(math.isfinite(entry.lhs) and math.isfinite(entry.rhs))
            self.assertLessEqual(entry.ratio, 3.0)
            self.assertTrue(entry.ok)

    def test_higher_alpha_within_bounds(self):
        tau = GeometricSeq.powers(0.5, 0, 12)
        a = np.random.default_rng(7).uniform(0.0, 1.0, 12)
        report = check_geometric_equivalences(tau, a, 2.5)
        self.assertTrue(all(entry.ok for entry in report.values()))

    def test_errors(self):
        with self.assertRaises(IndexMismatch):
            check_geometric_equivalences(GeometricSeq.powers(0.5, 0, 3), [1.0, 2.0], 1.0)
        with self.assertRaises(RangeError):
            GeometricSeq(0, (1.0, 0.9), 0.5)
        with self.assertRaises(RangeError):
            GeometricSeq.powers(1.0, 0, 3)


class IntervalEquivalenceTests(unittest.TestCase):
    def setUp(self):
        self.seq = _unit_sequence()
        self.tau = GeometricSeq.powers(0.5, 1, 12)

    def test_constant_integrand(self):
        report = check_interval_equivalences(self.tau, self.seq, ONE, 1.0)
        quarter = sum(4.0 ** -k for k in range(1, 13))
        half = sum(2.0 ** -k for k in range(1, 13))
        self.assertAlmostEqual(report["dec-sum-sum"].rhs, quarter, delta=1e-8)
        self.assertAlmostEqual(report["dec-sum-sum"].lhs, half - quarter, delta=1e-8)
        self.assertTrue(all(entry.ok for entry in report.values()))

    def test_one_cell_support(self):
        g = WeightExpr.piecewise([((0.0, 0.55), ZERO), ((0.55, 0.7), ONE), ((0.7, 1.0), ZERO)])
        report = check_interval_equivalences(self.tau, self.seq, g, 1.0)
        self.assertAlmostEqual(report["dec-sup-sum"].ratio, 1.0, delta=1e-12)

    def test_unit_sigma_collapses(self):
        report = check_interval_equivalences(self.tau, self.seq, WeightExpr.power(1.0, -0.5), alpha=2.0)
        self.assertAlmostEqual(report["3-sum-equiv"].lhs, report["dec-sum-sum"].lhs, delta=1e-12)
        self.assertAlmostEqual(report["3-sum-equiv"].rhs, report["dec-sum-sum"].rhs, delta=1e-12)

    def test_sigma_checks(self):
        with self.assertRaises(IndexMismatch):
            check_interval_equivalences(self.tau, self.seq, ONE, alpha=1.0, sigma=[1.0, 2.0])
        with self.assertRaises(RangeError):
            check_interval_equivalences(self.tau, self.seq, ONE, alpha=1.0, sigma=np.linspace(2.0, 1.0, 13))
        with self.assertRaises(IndexMismatch):
            check_interval_equivalences(GeometricSeq.powers(0.5, 1, 5), self.seq, ONE, alpha=1.0)


class DyadicSummationTests(unittest.TestCase):
    def setUp(self):
        self.seq = _unit_sequence()
        self.w = ONE.on(UNIT)

    def test_constant_h(self):
        report = check_dyadic_summation(self.w, self.seq, 1.0, lambda t: np.ones_like(t))
        self.assertAlmostEqual(report["int.equiv"].ratio, 1.0, delta=1e-8)
        self.assertTrue(report["int.equiv"].ok)
        self.assertTrue(report["sup.equiv"].ok)

    def test_inverse_root_of_tail(self):
        report = check_dyadic_summation(self.w, self.seq, 1.0, lambda t: np.power(1.0 - t, -0.5))
        self.assertAlmostEqual(report["int.equiv"].lhs, 2.0 * (1.0 - 2.0 ** -6), delta=2e-3)
        self.assertAlmostEqual(report["int.equiv"].rhs, sum(2.0 ** (-k / 2.0) for k in range(1, 13)), delta=1e-6)
        self.assertTrue(report["int.equiv"].ok)

    def test_step_h(self):
        report = check_dyadic_summation(self.w, self.seq, 1.0, lambda t: np.where(t > 0.9, 1.0, 0.0))
        entry = report["int.equiv"]
        self.assertTrue(math.isfinite(entry.lhs) and math.isfinite(entry.rhs))
        self.assertTrue(0.25 <= entry.ratio <= 4.0)

    def test_truncated_last_term(self):
        # h = (1 - t)^-3 puts most of the dyadic sum on x_K, whose cell lies past the truncation
        report = check_dyadic_summation(self.w, self.seq, 1.0, lambda t: np.power(1.0 - t, -3.0))
        entry = report["int.equiv"]
        self.assertLess(entry.ratio, 0.5)
        self.assertLess(entry.lower, 0.5 * 0.3)
        self.assertTrue(entry.ok)

    def test_needs_a_cell(self):
        with self.assertRaises(IndexMismatch):
            check_dyadic_summation(self.w, self.seq, 1.0, lambda t: np.ones_like(t), n=12)
        with self.assertRaises(RangeError):
            check_dyadic_summation(self.w, self.seq, 0.0, lambda t: np.ones_like(t))
