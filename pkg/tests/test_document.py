# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import unittest


class DocTests(unittest.TestCase):
    def test_same_code_as_readme(self):
        from hardy_certify import (
            ExponentSet,
            IntervalSpec,
            ProblemSpec,
            SeqWeights,
            WeightExpr,
            compute_C,
            embedding_constant,
            maximize_discrete_embedding,
        )

        # u = v = w = 1 on (0, 1) with p = q = r = 1
        one = WeightExpr.power(1.0, 0.0)
        spec = ProblemSpec(IntervalSpec(0.0, 1.0), ExponentSet(1.0, 1.0, 1.0), u=one, v=one, w=one, cell_points=64)
        c1 = compute_C("C1", spec)
        assert abs(c1.value - 0.5) < 1e-6

        # the embedding constant is exact, the brute force finds it
        sw = SeqWeights.of([1.0, 2.0], [1.0, 1.0])
        assert embedding_constant(sw, 1.0, 2.0).value == 2.0
        assert maximize_discrete_embedding(sw, 1.0, 2.0).estimate == 2.0
