# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import unittest

from hardy_certify.constants import main_regime, monotone_regime
from hardy_certify.report import config_from_dict
from hardy_certify.scripts import _get_suite_file_path, generate_suite
from hardy_certify.scripts.data import SuiteBuilder
from hardy_certify.suite import MAIN_SUITE, MONOTONE_SUITE


class GenerationTests(unittest.TestCase):
    def test_generate_suite(self):
        file_path = _get_suite_file_path()
        with open(file_path, "rb") as f:
            before = f.read()
        generate_suite()
        with open(file_path, "rb") as f:
            after = f.read()
        self.assertEqual(before, after)

    def test_builder_needs_a_case(self):
        builder = SuiteBuilder()
        builder.entry = None
        with self.assertRaises(ValueError):
            builder.exponents(1, 1)


class SuiteTests(unittest.TestCase):
    def test_names_match_regimes(self):
        for entry in MAIN_SUITE:
            cfg = config_from_dict(entry)
            spec = cfg.problem
            self.assertEqual(main_regime(spec.p, spec.q, spec.r).value, entry["name"].split("-")[0])
        for entry in MONOTONE_SUITE:
            cfg = config_from_dict(entry)
            self.assertEqual(monotone_regime(*cfg.exponents).value, entry["name"].split("-")[0])

    def test_unique_names(self):
        self.assertEqual(len({entry["name"] for entry in MAIN_SUITE}), len(MAIN_SUITE))
        self.assertEqual(len({entry["name"] for entry in MONOTONE_SUITE}), len(MONOTONE_SUITE))
