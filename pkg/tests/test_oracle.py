# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import math
import os
import unittest
from unittest import mock

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hardy_certify.constants_discrete import SeqWeights, discrete_hardy_constant, embedding_constant, local_hardy_B
from hardy_certify.errors import EmptyRange, RangeError, ZeroFunction
from hardy_certify.measure_core import ExponentSet, IntervalSpec, ProblemSpec, WeightExpr
from hardy_certify.oracle import (
    N_BLOCKS,
    GridFunction,
    _blocks,
    _maximize,
    _OracleGrid,
    maximize_discrete_embedding,
    maximize_discrete_hardy,
    maximize_dual_ratio,
    maximize_local_hardy,
    maximize_ratio_main,
    maximize_ratio_monotone,
    ratio_main,
    worker_count,
)

UNIT = IntervalSpec(0.0, 1.0)
ONE = WeightExpr.power(1.0, 0.0)
GRID = np.linspace(0.0, 1.0, 65)
EXPONENTS = (0.5, 1.0, 2.0, 3.0)


def _spec(p=1.0, q=1.0, r=1.0):
    return ProblemSpec(UNIT, ExponentSet(p, q, r), ONE, ONE, ONE, k_max=10, cell_points=16)


class RatioTests(unittest.TestCase):
    def test_constant_function(self):
        # int_0^1 (int_0^x t dt) dx = 1/6 against int_0^1 1 = 1
        value = ratio_main(GridFunction(GRID, np.ones(64)), _spec())
        self.assertAlmostEqual(value, 1.0 / 6.0, delta=1e-4)

    @given(arrays(np.float64, 64, elements=st.floats(0.01, 10.0)), st.floats(0.1, 10.0))
    @settings(deadline=None, max_examples=10)
    def test_zero_homogeneous(self, values, lam):
        spec = _spec(2.0, 3.0, 1.5)
        f = GridFunction(GRID, values)
        reference = ratio_main(f, spec)
        self.assertAlmostEqual(ratio_main(f.scaled(lam), spec), reference, delta=1e-10 * reference)

    def test_zero_function(self):
        with self.assertRaises(ZeroFunction):
            ratio_main(GridFunction(GRID, np.zeros(64)), _spec())

    def test_grid_function_checks(self):
        with self.assertRaises(RangeError):
            GridFunction(GRID, np.ones(10))
        with self.assertRaises(RangeError):
            GridFunction(GRID, -np.ones(64))


class MainOracleTests(unittest.TestCase):
    def test_constant_weights(self):
        result = maximize_ratio_main(_spec(), n_cells=64, restarts=2)
        self.assertGreaterEqual(result.estimate, 0.49)
        self.assertLessEqual(result.estimate, 0.5 + 1e-4)
        self.assertEqual(np.max(result.argmax.values), 1.0)
        self.assertEqual(result.seed, 42)

    def test_recomputed_ratio(self):
        spec = _spec(2.0, 2.0, 2.0)
        result = maximize_ratio_main(spec, n_cells=64, restarts=2)
        self.assertAlmostEqual(ratio_main(result.argmax, spec), result.estimate, delta=1e-9 * result.estimate)

    def test_deterministic(self):
        spec = _spec(2.0, 3.0, 1.5)
        first = maximize_ratio_main(spec, n_cells=64, restarts=3, seed=5)
        with mock.patch.dict(os.environ, {"HARDY_CERT_THREADS": "1"}):
            second = maximize_ratio_main(spec, n_cells=64, restarts=3, seed=5)
        self.assertEqual(first.estimate, second.estimate)
        np.testing.assert_array_equal(first.argmax.values, second.argmax.values)

    def test_refinement_trend(self):
        for exponents in [(1.0, 1.0, 1.0), (2.0, 2.0, 2.0)]:
            spec = _spec(*exponents)
            coarse = maximize_ratio_main(spec, n_cells=64, restarts=2).estimate
            fine = maximize_ratio_main(spec, n_cells=128, restarts=2).estimate
            self.assertGreaterEqual(fine, coarse * 0.99)
            self.assertLessEqual(abs(fine - coarse), 0.05 * coarse)

    def test_minimum_cells(self):
        with self.assertRaises(RangeError):
            maximize_ratio_main(_spec(), n_cells=16)


class MonotoneOracleTests(unittest.TestCase):
    def test_constant_weights(self):
        result = maximize_ratio_monotone(_spec(), n_cells=64, restarts=4)
        self.assertAlmostEqual(result.estimate, 0.5, delta=1e-2)
        self.assertEqual(set(result.details), {"increments", "substitution", "spike"})
        self.assertTrue(np.all(np.diff(result.argmax.values) >= 0))

    def test_below_unrestricted_maximum(self):
        # nondecreasing candidates are a subset of all nonnegative ones on the same grid
        spec = _spec()
        result = maximize_ratio_monotone(spec, n_cells=64, restarts=4)
        grid = _OracleGrid(spec, 64)
        problem = grid.monotone_problem()
        unrestricted = _maximize(problem, grid.n, 4, 42, result.argmax.values, _blocks(grid.n, N_BLOCKS))[0]
        self.assertLessEqual(result.estimate, unrestricted * 1.01)


class SequenceOracleTests(unittest.TestCase):
    @given(
        st.lists(st.tuples(st.floats(0.5, 2.0), st.floats(0.5, 2.0)), min_size=1, max_size=6),
        st.sampled_from(EXPONENTS),
        st.sampled_from(EXPONENTS),
    )
    @settings(deadline=None, max_examples=25)
    def test_embedding_matches_exact_constant(self, pairs, p, q):
        sw = SeqWeights.of([v for v, _ in pairs], [w for _, w in pairs])
        exact = embedding_constant(sw, p, q)
        result = maximize_discrete_embedding(sw, p, q, restarts=4)
        self.assertLessEqual(result.estimate, exact.value * (1 + 1e-9))
        self.assertGreaterEqual(result.estimate, exact.value * (1 - 1e-3))

    @given(
        st.lists(st.tuples(st.floats(0.1, 10.0), st.floats(0.1, 10.0)), min_size=1, max_size=6),
        st.sampled_from(EXPONENTS),
        st.sampled_from(EXPONENTS),
    )
    @settings(deadline=None, max_examples=50)
    def test_hardy_sandwich(self, pairs, p, q):
        sw = SeqWeights.of([a for a, _ in pairs], [b for _, b in pairs])
        constant = discrete_hardy_constant(sw, p, q).value
        estimate = maximize_discrete_hardy(sw, p, q, restarts=4).estimate
        self.assertLessEqual(constant / 8.0, estimate)
        self.assertLessEqual(estimate, 8.0 * constant)

    def test_embedding_spike(self):
        result = maximize_discrete_embedding(SeqWeights.of([1, 2], [1, 1]), 1.0, 2.0)
        self.assertEqual(result.estimate, 2.0)

    def test_embedding_spread(self):
        result = maximize_discrete_embedding(SeqWeights.of([1, 1], [1, 1]), 2.0, 1.0, restarts=4)
        self.assertAlmostEqual(result.estimate, math.sqrt(2.0), delta=1e-4)

    def test_embedding_size_limit(self):
        with self.assertRaises(RangeError):
            maximize_discrete_embedding(SeqWeights.of([1] * 17, [1] * 17), 1.0, 2.0)

    def test_hardy_first_case(self):
        result = maximize_discrete_hardy(SeqWeights.of([1, 1, 1], [1, 1, 1]), 1.0, 1.0)
        self.assertEqual(result.estimate, 3.0)

    def test_hardy_third_case(self):
        sw = SeqWeights.of([1, 1, 1], [1, 1, 1])
        result = maximize_discrete_hardy(sw, 2.0, 1.0, restarts=4)
        # sum_i x_i (3 - i) against |x|_2 peaks at |(3, 2, 1)|_2
        self.assertAlmostEqual(result.estimate, math.sqrt(14.0), delta=4e-3)
        ratio = discrete_hardy_constant(sw, 2.0, 1.0).value / result.estimate
        self.assertTrue(1e-2 <= ratio <= 1e2)

    def test_hardy_zero_b(self):
        result = maximize_discrete_hardy(SeqWeights.of([1, 1, 1], [0, 0, 0]), 2.0, 1.0)
        self.assertEqual(result.estimate, 0.0)
        self.assertIn("degenerate", result.details)


class LocalOracleTests(unittest.TestCase):
    def test_local_hardy(self):
        result = maximize_local_hardy(ONE, ONE, 1.0, 1.0, (0.0, 1.0), n_cells=64, restarts=2)
        self.assertAlmostEqual(result.estimate, local_hardy_B(ONE, ONE, 1.0, 1.0, (0.0, 1.0)), delta=1e-3)

    def test_dual_ratio(self):
        result = maximize_dual_ratio(ONE, 2.0, (0.0, 1.0), n_cells=64, restarts=2)
        self.assertGreaterEqual(result.estimate, 0.95)
        self.assertLessEqual(result.estimate, 1.0 + 1e-9)

    def test_empty_cell(self):
        with self.assertRaises(EmptyRange):
            maximize_dual_ratio(ONE, 2.0, (0.5, 0.5))


class WorkerCountTests(unittest.TestCase):
    def test_environment(self):
        with mock.patch.dict(os.environ, {"HARDY_CERT_THREADS": "3"}):
            self.assertEqual(worker_count(), 3)
        with mock.patch.dict(os.environ, {"HARDY_CERT_THREADS": "many"}):
            with self.assertRaises(RangeError):
                worker_count()
