# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

suite_template = """# -*- coding: utf-8 -*-
# this file is generated by hardy_certify.scripts.generate_suite
from __future__ import absolute_import, unicode_literals

MAIN_SUITE = [
{}
]

MONOTONE_SUITE = [
{}
]
"""


class SuiteBuilder(object):
    """
    acceptance specs on (0, 1) with power weights t^alpha, alpha in {-1/2, 0, 1};
    every ``_suite_*`` method adds its cases in call order
    """

    MAIN = "main"
    MONOTONE = "monotone"

    def __init__(self):
        self.main = []
        self.monotone = []
        self.entry = None

        for method in dir(self):
            if method.startswith("_suite_"):
                getattr(self, method)()

    # fmt: off
    def _suite_main(self):
        """regimes of the iterated inequality, three cases each"""
        self.main_case("i-constant").exponents(1, 1, 1).weights(0, 0, 0) \
            .main_case("i-growing-u").exponents(2, 2, 3).weights(1, 0, 0).beta(0, 0.5) \
            .main_case("i-singular-v").exponents(1, 2, 2).weights(0, -0.5, 0) \
            .main_case("ii-constant").exponents(2, 3, 1).weights(0, 0, 0) \
            .main_case("ii-growing-u").exponents(3, 3, 2).weights(1, 0, 0).beta(0, 0.5) \
            .main_case("ii-singular-w").exponents(2, 2, 1).weights(0, 0, -0.5) \
            .main_case("iii-constant").exponents(2, 1, 2).weights(0, 0, 0) \
            .main_case("iii-growing-w").exponents(3, 2, 3).weights(0, 0, 1) \
            .main_case("iii-singular-u").exponents(2, 1, 3).weights(-0.5, 0, 0).beta(0, 0.5) \
            .main_case("iv-constant").exponents(2, 1, 1).weights(0, 0, 0) \
            .main_case("iv-singular-w").exponents(3, 2, 1).weights(0, 0, -0.5) \
            .main_case("iv-growing-u").exponents(3, 1, 2).weights(1, 0, 0).beta(0, 0.5)

    def _suite_monotone(self):
        """nondecreasing functions, regimes compare p with q and 1"""
        self.monotone_case("i-constant").exponents(1, 1).weights(0, 0, 0) \
            .monotone_case("i-growing-w").exponents(1, 2).weights(0, 0, 1) \
            .monotone_case("ii-constant").exponents(1, 0.5).weights(0, 0, 0) \
            .monotone_case("iii-constant").exponents(2, 3).weights(0, 0, 0) \
            .monotone_case("iv-constant").exponents(2, 1).weights(0, 0, 0) \
            .monotone_case("iv-growing-u").exponents(3, 2).weights(1, 0, 0)
    # fmt: on

    def main_case(self, name):
        return self.start(name, self.MAIN, self.main)

    def monotone_case(self, name):
        return self.start(name, self.MONOTONE, self.monotone)

    def start(self, name, mode, bucket):
        self.entry = {
            "schema": 1,
            "mode": mode,
            "name": name,
            "interval": {"a": 0.0, "b": 1.0},
            "exponents": {"beta": [0.0]},
        }
        bucket.append(self.entry)
        return self

    def exponents(self, p, q, r=None):
        if not self.entry:
            raise ValueError("should start a case before setting exponents")
        self.entry["exponents"].update({"p": float(p), "q": float(q)})
        if r is not None:
            self.entry["exponents"]["r"] = float(r)
        return self

    def beta(self, *values):
        if not self.entry:
            raise ValueError("should start a case before setting beta")
        if not all(value < 1 for value in values):
            raise ValueError("beta must be < 1")
        self.entry["exponents"]["beta"] = [float(value) for value in values]
        return self

    def weights(self, u, v, w):
        """power weights t^u, t^v, t^w"""
        if not self.entry:
            raise ValueError("should start a case before setting weights")
        self.entry["weights"] = {
            name: {"form": "power", "c": 1.0, "alpha": float(alpha)} for name, alpha in (("u", u), ("v", v), ("w", w))
        }
        return self
