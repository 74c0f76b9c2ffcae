# -*- coding: utf-8 -*-
"""
The characterizing constants of the weighted iterated hardy inequality and of its
restriction to nondecreasing functions.

Every constant is a nested functional of W, the u-measure G and the dual weight V.
They are tabulated once on a graded grid; outer suprema and integrals run over an
every-``stride``-th subset of the nodes while inner integrals and suprema use all
of them. The quadrature error is the change when the outer subset is halved.
"""
from __future__ import absolute_import, unicode_literals

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from hardy_certify.constants import ConstantName, Regime, main_regime, monotone_regime
from hardy_certify.discretize import graded_grid
from hardy_certify.errors import DegenerateError, RangeError, TailDivergent, TrivialRegime
from hardy_certify.measure_core import WeightTables, positive_part, safe_power, safe_product

logger = logging.getLogger(__name__)

OUTER_STRIDE = 8
_CHUNK_ELEMENTS = 2000000


@dataclass(frozen=True)
class ConstantValue(object):
    name: ConstantName
    value: float
    quadrature_error: float = 0.0
    note: str = ""

    @property
    def finite(self):
        return math.isfinite(self.value)

    def to_dict(self):
        data = {
            "name": self.name.value,
            "label": self.name.label,
            "value": self.value,
            "error": self.quadrature_error,
            "finite": self.finite,
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class ConstantReport(object):
    """the regime, its constant combination and every constant evaluated on the way"""

    kind: str
    regime: Optional[Regime]
    constants: Dict[str, ConstantValue] = field(default_factory=dict)
    degenerate: Optional[str] = None
    notes: List[str] = field(default_factory=list)
    sequence: object = None
    tables: List[dict] = field(default_factory=list)

    @property
    def combination(self):
        if self.regime is None:
            return ()
        return {"main": self.regime.main, "monotone": self.regime.monotone}.get(self.kind, self.regime.discrete)

    @property
    def characterization(self):
        if self.degenerate is not None:
            return math.inf
        return sum(self.constants[name].value for name in self.combination)

    @property
    def finite(self):
        return self.degenerate is None and math.isfinite(self.characterization)

    def to_dict(self):
        return {
            "kind": self.kind,
            "regime": None if self.regime is None else self.regime.value,
            "combination": list(self.combination),
            "characterization": self.characterization,
            "finite": self.finite,
            "degenerate": self.degenerate,
            "constants": {name: value.to_dict() for name, value in sorted(self.constants.items())},
            "notes": list(self.notes),
            "sequence": None if self.sequence is None else self.sequence.to_dict(),
            "tables": list(self.tables),
        }


class _Profile(object):
    """
    W and V at the grid nodes, the cell masses of g = W^(beta q/r) u, and the
    exponents the constants are built from
    """

    def __init__(self, W, g, V, p, q, r, beta, grid, stride=OUTER_STRIDE):
        self.W, self.g, self.V = W, g, V
        self.p, self.q, self.r, self.beta = p, q, r, beta
        self.grid = grid
        self.G = np.concatenate([[0.0], np.cumsum(g)])
        n = len(W) - 1
        outer = np.arange(0, n + 1, max(1, min(stride, n)))
        if outer[-1] != n:
            outer = np.append(outer, n)
        self.outer = outer
        self.mu = self.measure(-beta)

    @property
    def n(self):
        return len(self.W) - 1

    def measure(self, gamma, nodes=None):
        """integral of W^gamma w between consecutive nodes, exact since dW = -w dt"""
        W = self.W if nodes is None else self.W[nodes]
        power = gamma + 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            return (safe_power(W[:-1], power) - safe_power(W[1:], power)) / power

    def _chunks(self, rows):
        size = max(1, _CHUNK_ELEMENTS // (self.n + 1))
        for start in range(0, len(rows), size):
            yield rows[start:start + size]

    def tail_integral(self, rows):
        """int_x^b W^-beta w (G(t) - G(x))^(r/q) dt at the given nodes"""
        s = self.r / self.q
        out = np.empty(len(rows))
        for chunk in self._chunks(rows):
            lo = int(chunk.min())
            powered = safe_power(positive_part(self.G[None, lo:] - self.G[chunk, None]), s)
            cells = 0.5 * (powered[:, :-1] + powered[:, 1:])
            out[np.searchsorted(rows, chunk)] = np.sum(safe_product(cells, self.mu[None, lo:]), axis=1)
        return out

    def running_sup(self, rows, exponent, dual_exponent):
        """sup over t < x of (G(x) - G(t))^exponent V(t)^dual_exponent"""
        weight = safe_power(self.V, dual_exponent)
        out = np.empty(len(rows))
        for chunk in self._chunks(rows):
            hi = int(chunk.max()) + 1
            powered = safe_power(positive_part(self.G[chunk, None] - self.G[None, :hi]), exponent)
            out[np.searchsorted(rows, chunk)] = np.max(safe_product(powered, weight[None, :hi]), axis=1)
        return out

    def head_integral(self, rows, exponent, dual_exponent):
        """int_a^x (G(x) - G(t))^exponent V(t)^dual_exponent dG(t)"""
        weight = safe_power(self.V, dual_exponent)
        out = np.empty(len(rows))
        for chunk in self._chunks(rows):
            hi = int(chunk.max()) + 1
            values = safe_product(
                safe_power(positive_part(self.G[chunk, None] - self.G[None, :hi]), exponent), weight[None, :hi]
            )
            cells = 0.5 * (values[:, :-1] + values[:, 1:])
            out[np.searchsorted(rows, chunk)] = np.sum(safe_product(cells, self.g[None, : hi - 1]), axis=1)
        return out

    def outer_integral(self, values, gamma, nodes):
        """trapezoid sum of values against W^gamma w over the cells between ``nodes``"""
        mu = self.measure(gamma, nodes)
        return float(np.sum(safe_product(mu, 0.5 * (values[:-1] + values[1:]))))

    def refine_sup(self, evaluate, coarse):
        """maximum over the fine nodes next to the best outer node"""
        best = int(np.argmax(coarse))
        lo = self.outer[max(best - 1, 0)]
        hi = self.outer[min(best + 1, len(self.outer) - 1)]
        rows = np.arange(lo, hi + 1)
        return max(float(np.max(coarse)), float(np.max(evaluate(rows))))


def _halved(outer):
    half = outer[::2]
    if half[-1] != outer[-1]:
        half = np.append(half, outer[-1])
    return half


def _sup_constant(profile, evaluate):
    coarse = evaluate(profile.outer)
    value = profile.refine_sup(evaluate, coarse)
    coarser = float(np.max(coarse[::2]))
    if not math.isfinite(value):
        return value, 0.0
    return value, abs(value - coarser)


def _integral_constant(profile, values, gamma, power):
    outer = profile.outer
    total = profile.outer_integral(values, gamma, outer)
    mask = np.isin(outer, _halved(outer))
    coarser = profile.outer_integral(values[mask], gamma, outer[mask])
    value = safe_power(np.array([total]), power)[0]
    other = safe_power(np.array([coarser]), power)[0]
    return float(value), float(abs(value - other)) if math.isfinite(value) else 0.0


def _evaluate(name, profile):
    p, q, r, beta = profile.p, profile.q, profile.r, profile.beta
    if not np.all(np.isfinite(profile.g)):
        return math.inf, 0.0, "inner integral of u diverges"
    key = name.value[-1]

    if key == "1":
        return _sup_constant(
            profile,
            lambda rows: safe_product(safe_power(profile.tail_integral(rows), 1.0 / r), profile.V[rows]),
        ) + ("",)
    if key in "235" and not r < p:
        raise RangeError("{} needs r < p, got p={}, r={}".format(name.value, p, r))
    if key in "45" and not q < p:
        raise RangeError("{} needs q < p, got p={}, q={}".format(name.value, p, q))
    outer = profile.outer
    weight_gamma = (1.0 - beta) * p / (p - r) - 1.0 if key in "25" else None
    if key == "2":
        sups = profile.running_sup(outer, r * p / (q * (p - r)), p * r / (p - r))
        return _integral_constant(profile, sups, weight_gamma, (p - r) / (p * r)) + ("",)
    if key == "3":
        tails = safe_power(profile.tail_integral(outer), r / (p - r))
        sups = profile.running_sup(outer, r / q, p * r / (p - r))
        return _integral_constant(profile, safe_product(tails, sups), -beta, (p - r) / (p * r)) + ("",)
    inner_exponent, dual_exponent = q / (p - q), p * q / (p - q)
    if key == "4":

        def evaluate(rows):
            heads = safe_power(profile.head_integral(rows, inner_exponent, dual_exponent), (p - q) / (p * q))
            return safe_product(safe_power(profile.W[rows], (1.0 - beta) / r), heads)

        return _sup_constant(profile, evaluate) + ("",)
    heads = safe_power(profile.head_integral(outer, inner_exponent, dual_exponent), r * (p - q) / (q * (p - r)))
    return _integral_constant(profile, heads, weight_gamma, (p - r) / (p * r)) + ("",)


def main_profile(spec, grid=None):
    """
    :type spec: hardy_certify.measure_core.ProblemSpec
    :rtype: _Profile
    """
    grid = grid or graded_grid(spec)
    tables = WeightTables(spec, grid.nodes, grid.w_end)
    g = tables.u_measure(spec.beta * spec.q / spec.r)
    V = tables.dual().from_start()
    return _Profile(tables.W, g, V, spec.p, spec.q, spec.r, spec.beta, grid)


def monotone_profile(spec, grid=None):
    """
    the monotone inequality in (p, q) is the main one in (1, 1/p, q/p) with the
    dual weight V_1(a, x) = 1 / int_x^b v; constants come out to the power p
    """
    grid = grid or graded_grid(spec)
    tables = WeightTables(spec, grid.nodes, grid.w_end)
    tails = tables.tail_v()
    if not np.any(np.isfinite(tails)):
        raise TailDivergent("the tail integral of v diverges at every point")
    with np.errstate(divide="ignore"):
        V = np.where(np.isfinite(tails), 1.0 / tails, 0.0)
    p, q = spec.p, spec.q
    g = tables.u_measure(spec.beta / q)
    return _Profile(tables.W, g, V, 1.0, 1.0 / p, q / p, spec.beta, grid)


def compute_C(name, spec, profile=None):
    """
    one of C1..C5 for the main inequality

    :type name: ConstantName
    :type spec: hardy_certify.measure_core.ProblemSpec
    :rtype: ConstantValue
    """
    name = ConstantName(name)
    if name.family != "continuous":
        raise RangeError("{} is not a constant of the main inequality".format(name.value))
    profile = profile or main_profile(spec)
    value, error, note = _evaluate(name, profile)
    logger.debug("%s = %s (+- %s)", name.value, value, error)
    return ConstantValue(name, value, error, note)


def compute_calC(name, spec, profile=None):
    """
    one of calC1..calC5 for the inequality restricted to nondecreasing functions

    :type name: ConstantName
    :rtype: ConstantValue
    """
    name = ConstantName(name)
    if name.family != "monotone":
        raise RangeError("{} is not a constant of the monotone inequality".format(name.value))
    profile = profile or monotone_profile(spec)
    value, error, note = _evaluate(ConstantName("C" + name.value[-1]), profile)
    scaled = safe_power(np.array([value]), 1.0 / spec.p)[0]
    if math.isfinite(value) and value > 0:
        error = scaled * error / (spec.p * value)
    logger.debug("%s = %s (+- %s)", name.value, scaled, error)
    return ConstantValue(name, float(scaled), float(error), note)


def characterize_main(spec):
    """
    :type spec: hardy_certify.measure_core.ProblemSpec
    :rtype: ConstantReport
    """
    if spec.p < 1:
        raise TrivialRegime("p={} < 1: the inequality only holds for trivial functions".format(spec.p))
    regime = main_regime(spec.p, spec.q, spec.r)
    report = ConstantReport("main", regime)
    try:
        profile = main_profile(spec)
    except DegenerateError as error:
        report.degenerate = str(error)
        return report
    report.sequence = profile.grid.seq
    report.notes.extend(profile.grid.notes)
    for name in regime.main:
        report.constants[name] = compute_C(name, spec, profile)
    logger.info("main regime %s: %s", regime.value, report.characterization)
    return report


def characterize_monotone(spec):
    """
    :type spec: hardy_certify.measure_core.ProblemSpec
    :rtype: ConstantReport
    """
    regime = monotone_regime(spec.p, spec.q)
    report = ConstantReport("monotone", regime)
    if regime is Regime.iii:
        report.notes.append("case (iii) requires calC1 < inf, read as the monotone constant")
    try:
        profile = monotone_profile(spec)
    except DegenerateError as error:
        report.degenerate = str(error)
        return report
    report.sequence = profile.grid.seq
    report.notes.extend(profile.grid.notes)
    for name in regime.monotone:
        report.constants[name] = compute_calC(name, spec, profile)
    logger.info("monotone regime %s: %s", regime.value, report.characterization)
    return report


__all__ = [
    "ConstantValue",
    "ConstantReport",
    "compute_C",
    "compute_calC",
    "characterize_main",
    "characterize_monotone",
    "main_profile",
    "monotone_profile",
]
