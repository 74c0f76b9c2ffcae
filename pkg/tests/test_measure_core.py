# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_certify.errors import Divergent, NonPositive, OutOfDomain, RangeError, SchemaError
from hardy_certify.measure_core import (
    DualTable,
    ExponentSet,
    IntervalSpec,
    QuadSettings,
    V_p,
    WeightExpr,
    cell_integrals,
    ess_sup,
    eval_weight,
    integrate,
    safe_power,
    safe_product,
    tail_W,
)

UNIT = IntervalSpec(0.0, 1.0)
ONE = WeightExpr.power(1.0, 0.0)


class EvalWeightTests(unittest.TestCase):
    def test_power_weights(self):
        self.assertEqual(eval_weight(ONE, 0.3), 1.0)
        self.assertEqual(eval_weight(WeightExpr.power(2.0, 1.0), 0.5), 1.0)

    def test_piecewise_lookup(self):
        expr = WeightExpr.piecewise([((0.0, 0.5), ONE), ((0.5, 1.0), WeightExpr.power(2.0, 0.0))])
        self.assertEqual(eval_weight(expr, 0.75), 2.0)
        self.assertEqual(eval_weight(expr, 0.25), 1.0)
        self.assertEqual(expr.breakpoints, (0.5,))

    def test_outside_interval(self):
        with self.assertRaises(OutOfDomain):
            eval_weight(ONE.on(UNIT), 1.5)
        with self.assertRaises(OutOfDomain):
            eval_weight(ONE.on(UNIT), 0.0)

    def test_zero_weight_is_a_descriptor_bug(self):
        with self.assertRaises(NonPositive):
            eval_weight(WeightExpr.power(0.0, 0.0), 0.5)

    def test_json_schema(self):
        obj = {
            "form": "product",
            "factors": [{"form": "power", "c": 2, "alpha": 1}, {"form": "exp_scale", "c": 1, "lambda": -1}],
        }
        expr = WeightExpr.from_dict(obj)
        self.assertAlmostEqual(eval_weight(expr, 1.0), 2.0 * math.exp(-1.0))
        self.assertEqual(WeightExpr.from_dict(expr.to_dict()), expr)
        with self.assertRaises(SchemaError):
            WeightExpr.from_dict({"form": "power", "c": 1, "alpha": 0, "beta": 2})
        with self.assertRaises(SchemaError):
            WeightExpr.from_dict({"form": "cosine"})

    def test_piecewise_must_tile(self):
        with self.assertRaises(SchemaError):
            WeightExpr.piecewise([((0.0, 0.4), ONE), ((0.5, 1.0), ONE)])


class SettingsTests(unittest.TestCase):
    def test_defaults(self):
        defaults = QuadSettings()
        self.assertEqual(defaults.rel_tol, 1e-8)
        self.assertEqual(defaults.abs_tol, 1e-12)
        self.assertEqual((defaults.max_depth, defaults.sup_grid), (48, 4096))

    def test_invalid(self):
        with self.assertRaises(RangeError):
            QuadSettings(rel_tol=0.0)
        with self.assertRaises(RangeError):
            QuadSettings(max_depth=4)
        with self.assertRaises(RangeError):
            ExponentSet(2.0, 1.0, 1.0, beta=1.5)
        with self.assertRaises(RangeError):
            IntervalSpec(1.0, 0.0)


class IntegrateTests(unittest.TestCase):
    def test_constant(self):
        self.assertAlmostEqual(integrate(ONE, 0.0, 1.0), 1.0, delta=1e-8)

    def test_endpoint_singularity(self):
        self.assertAlmostEqual(integrate(WeightExpr.power(1.0, -0.5), 0.0, 1.0), 2.0, delta=1e-6)

    def test_infinite_endpoint(self):
        self.assertAlmostEqual(integrate(WeightExpr.exp_scale(1.0, -1.0), 0.0, math.inf), 1.0, delta=1e-6)

    def test_divergent(self):
        with self.assertRaises(Divergent):
            integrate(WeightExpr.power(1.0, -2.0), 0.0, 1.0)

    def test_integrable_power_near_minus_one(self):
        for alpha in (-0.8, -0.9, -0.95):
            value = integrate(WeightExpr.power(1.0, alpha), 0.0, 1.0)
            self.assertAlmostEqual(value, 1.0 / (1.0 + alpha), delta=1e-6 / (1.0 + alpha))

    def test_logarithmic_divergence(self):
        with self.assertRaises(Divergent):
            integrate(WeightExpr.power(1.0, -1.0), 0.0, 1.0)

    def test_slow_decay_at_infinity(self):
        self.assertAlmostEqual(integrate(WeightExpr.power(1.0, -1.5), 1.0, math.inf), 2.0, delta=1e-6)

    def test_interior_singularity(self):
        value = integrate(lambda t: np.abs(t - 0.5) ** -0.5, 0.0, 1.0, breakpoints=(0.5,))
        self.assertAlmostEqual(value, 2.0 * math.sqrt(2.0), delta=1e-6)

    def test_empty_range(self):
        self.assertEqual(integrate(ONE, 0.5, 0.5), 0.0)

    @given(st.floats(0.0, 0.3), st.floats(0.35, 0.65), st.floats(0.7, 1.0))
    @settings(deadline=None)
    def test_additive(self, x, y, z):
        expr = WeightExpr.product([WeightExpr.power(1.0, -0.5), WeightExpr.exp_scale(1.0, 1.0)])
        whole = integrate(expr, x, z)
        parts = integrate(expr, x, y) + integrate(expr, y, z)
        self.assertLessEqual(abs(whole - parts), 4e-8 * whole)

    @given(st.floats(0.1, 100.0))
    @settings(deadline=None)
    def test_scaling(self, lam):
        expr = WeightExpr.power(1.0, 1.5)
        ratio = integrate(expr.scaled(lam), 0.0, 2.0) / integrate(expr, 0.0, 2.0)
        self.assertAlmostEqual(ratio, lam, delta=1e-12 * lam)

    def test_cell_integrals(self):
        nodes = np.linspace(0.0, 1.0, 5)
        cells = cell_integrals(WeightExpr.power(2.0, 1.0), nodes)
        np.testing.assert_allclose(cells, np.diff(nodes ** 2), rtol=1e-10)


class TailTests(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(tail_W(ONE.on(UNIT), 0.5), 0.5, delta=1e-10)
        w = WeightExpr.exp_scale(1.0, -1.0).on(IntervalSpec(0.0, math.inf))
        self.assertAlmostEqual(tail_W(w, 0.0), 1.0, delta=1e-6)

    def test_divergent_at_zero(self):
        with self.assertRaises(Divergent):
            tail_W(WeightExpr.power(1.0, -2.0).on(UNIT), 0.0)
        for k in range(1, 7):
            x = 10.0 ** -k
            self.assertAlmostEqual(tail_W(WeightExpr.power(1.0, -2.0).on(UNIT), x), 1.0 / x - 1.0, delta=1e-6 / x)

    @given(st.floats(0.0, 0.8), st.floats(0.01, 0.1))
    @settings(deadline=None)
    def test_strictly_decreasing(self, x, step):
        w = WeightExpr.power(1.0, -0.5).on(UNIT)
        self.assertGreater(tail_W(w, x), tail_W(w, x + step))


class DualWeightTests(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(V_p(ONE, 2.0, 0.0, 0.25), 0.5, delta=1e-8)
        self.assertAlmostEqual(V_p(ONE, 1.0, 0.0, 1.0), 1.0, delta=1e-8)
        self.assertEqual(V_p(WeightExpr.power(1.0, 1.0), 2.0, 0.0, 1.0), math.inf)

    def test_nearly_critical_weight(self):
        # v^(1-p') = t^-0.9 is integrable with mass 10
        self.assertAlmostEqual(V_p(WeightExpr.power(1.0, 0.9), 2.0, 0.0, 1.0), math.sqrt(10.0), delta=1e-6)

    def test_needs_p_at_least_one(self):
        with self.assertRaises(RangeError):
            V_p(ONE, 0.5, 0.0, 1.0)

    @given(st.floats(1.0, 4.0), st.floats(0.05, 0.45), st.floats(0.5, 0.95))
    @settings(deadline=None)
    def test_splitting(self, p, m, y):
        v = WeightExpr.power(1.0, 0.5)
        x = 0.01
        left, right, whole = V_p(v, p, x, m), V_p(v, p, m, y), V_p(v, p, x, y)
        self.assertLessEqual(max(left, right), whole * (1 + 1e-4))
        self.assertLessEqual(whole, (left + right) * (1 + 1e-4))

    def test_table_matches_direct(self):
        nodes = np.linspace(0.1, 1.0, 10)
        v = WeightExpr.power(1.0, 1.0)
        table = DualTable(v, 3.0, nodes)
        np.testing.assert_allclose(table.from_start()[-1], V_p(v, 3.0, 0.1, 1.0), rtol=1e-7)
        np.testing.assert_allclose(table.within(2, 5)[-1], V_p(v, 3.0, nodes[2], nodes[5]), rtol=1e-7)


class EssSupTests(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(ess_sup(lambda t: np.full_like(t, 3.0), 0.0, 1.0), 3.0)
        self.assertAlmostEqual(ess_sup(lambda t: t * (1 - t), 0.0, 1.0), 0.25, delta=1e-6)
        self.assertAlmostEqual(ess_sup(lambda t: np.minimum(t, 1 - t), 0.0, 1.0), 0.5, delta=1e-6)

    def test_unbounded(self):
        self.assertEqual(ess_sup(lambda t: 1.0 / t, 0.0, 1.0), math.inf)


class ConventionTests(unittest.TestCase):
    def test_zero_times_infinity(self):
        np.testing.assert_array_equal(safe_product([0.0, 2.0], [math.inf, 3.0]), [0.0, 6.0])

    def test_zero_power(self):
        np.testing.assert_array_equal(safe_power(np.array([0.0, 4.0]), 0.5), [0.0, 2.0])
