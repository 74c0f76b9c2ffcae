# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from hardy_certify.constants import ConstantName, embedding_regime, hardy_regime, main_regime
from hardy_certify.constants_continuous import ConstantReport
from hardy_certify.discretize import sequence_grid
from hardy_certify.errors import DegenerateError, EmptyRange, IndexMismatch, RangeError, TrivialRegime
from hardy_certify.measure_core import (
    DEFAULT_SETTINGS,
    DualTable,
    WeightTables,
    cell_integrals,
    safe_power,
    safe_product,
)

logger = logging.getLogger(__name__)

_LOCAL_POINTS = 256
_LOCAL_GRADING = 40


@dataclass(frozen=True)
class SeqWeights(object):
    """
    two weight sequences indexed N..M; ``v``/``w`` for the embedding, read as
    ``a``/``b`` by the discrete hardy inequality
    """

    N: int
    v: Tuple[float, ...]
    w: Tuple[float, ...]

    def __post_init__(self):
        if len(self.v) == 0:
            raise EmptyRange("a weight sequence needs at least one term")
        if len(self.v) != len(self.w):
            raise IndexMismatch("sequences of lengths {} and {} over one index range".format(len(self.v), len(self.w)))
        if any(x < 0 or math.isnan(x) for x in self.v + self.w):
            raise RangeError("weight sequences must be nonnegative")

    @classmethod
    def of(cls, first, second, N=0):
        return cls(N, tuple(float(x) for x in first), tuple(float(x) for x in second))

    @property
    def M(self):
        return self.N + len(self.v) - 1

    @property
    def a(self):
        return np.asarray(self.v, dtype=float)

    @property
    def b(self):
        return np.asarray(self.w, dtype=float)


@dataclass(frozen=True)
class DiscreteConstant(object):
    name: ConstantName
    value: float
    exact: bool = False
    error: float = 0.0

    @property
    def finite(self):
        return math.isfinite(self.value)

    def to_dict(self):
        return {
            "name": self.name.value,
            "label": self.name.label,
            "value": self.value,
            "exact": self.exact,
            "error": self.error,
            "finite": self.finite,
        }


def _norm(values, power):
    return float(safe_power(np.array([np.sum(values)]), power)[0])


def embedding_constant(sw, p, q):
    """
    best constant of the weighted embedding of l^p into l^q, attained exactly

    :type sw: SeqWeights
    :rtype: DiscreteConstant
    """
    if np.any(sw.b <= 0):
        raise RangeError("the embedding needs positive w_k")
    ratio = sw.a / sw.b
    name = embedding_regime(p, q)
    if name is ConstantName.L1:
        return DiscreteConstant(name, float(np.max(ratio)), exact=True)
    exponent = p * q / (p - q)
    return DiscreteConstant(name, _norm(safe_power(ratio, exponent), 1.0 / exponent), exact=True)


def discrete_hardy_constant(sw, p, q):
    """
    :type sw: SeqWeights with a_k = v, b_k = w
    :rtype: DiscreteConstant
    """
    a, b = sw.a, sw.b
    tails = np.cumsum(a[::-1])[::-1]
    name = hardy_regime(p, q)
    if name is ConstantName.H1:
        value = np.max(safe_product(safe_power(tails, 1.0 / q), b))
    elif name is ConstantName.H4:
        conjugate = p / (p - 1.0)
        heads = np.cumsum(safe_power(b, conjugate))
        value = np.max(safe_product(safe_power(tails, 1.0 / q), safe_power(heads, 1.0 / conjugate)))
    else:
        if name is ConstantName.H2:
            running = safe_power(np.maximum.accumulate(b), q * p / (p - q))
        else:
            running = safe_power(np.cumsum(safe_power(b, p / (p - 1.0))), q * (p - 1.0) / (p - q))
        terms = safe_product(a, safe_power(tails, q / (p - q)), running)
        value = _norm(terms, (p - q) / (p * q))
    return DiscreteConstant(name, float(value))


def _tails(masses):
    return np.concatenate([np.cumsum(masses[::-1])[::-1], [0.0]])


def _cell_sup(masses, dual, q):
    """sup over t of (inner mass right of t)^(1/q) V_p(left end, t)"""
    return float(np.max(safe_product(safe_power(_tails(masses), 1.0 / q), dual)))


def _cell_integral(masses, dual, p, q):
    values = safe_product(safe_power(_tails(masses), q / (p - q)), safe_power(dual, p * q / (p - q)))
    total = np.sum(safe_product(masses, 0.5 * (values[:-1] + values[1:])))
    return float(safe_power(np.array([total]), (p - q) / (p * q))[0])


def local_hardy_B(u, v, p, q, cell, settings=None, points=_LOCAL_POINTS):
    """
    characterizing quantity of the hardy inequality on a single cell: a supremum
    when p <= q, an integral when q < p

    :type u: WeightExpr
    :type v: WeightExpr
    :type cell: (float, float)
    :rtype: float
    """
    settings = settings or DEFAULT_SETTINGS
    lo, hi = cell
    if not lo < hi:
        raise RangeError("cell must satisfy lo < hi, got ({}, {})".format(lo, hi))
    if p < 1:
        raise RangeError("p must be >= 1, got {}".format(p))
    grading = lo + (hi - lo) * np.power(2.0, -np.arange(1, _LOCAL_GRADING + 1))
    nodes = np.unique(np.concatenate([np.linspace(lo, hi, points + 1), grading]))
    masses = cell_integrals(u, nodes, settings, getattr(u, "breakpoints", ()))
    dual = DualTable(v, p, nodes, settings).within(0, len(nodes) - 1)
    if p <= q:
        return _cell_sup(masses, dual, q)
    return _cell_integral(masses, dual, p, q)


class _DyadicTables(object):
    """the sub-grid of a discretizing sequence with g = W^(beta q/r) u and V_p tabulated"""

    def __init__(self, spec, seq, per_cell=None):
        grid = sequence_grid(spec, seq, per_cell)
        tables = WeightTables(spec, grid.nodes, grid.w_end)
        self.seq = seq
        self.notes = list(grid.notes)
        self.g = tables.u_measure(spec.beta * spec.q / spec.r)
        self.dual = tables.dual()
        self.V_start = self.dual.from_start()
        self.G = np.concatenate([[0.0], np.cumsum(self.g)])
        finite = [k for k in seq.indices if math.isfinite(seq.point(k))]
        self.marks = dict(zip(finite, (int(m) for m in grid.marks)))
        self.ks = finite
        if len(finite) < 2:
            raise DegenerateError("the discretizing sequence has no complete cell")

    def cells(self):
        """(k, first node, last node) of every dyadic cell (x_{k-1}, x_k)"""
        return [(k, self.marks[k - 1], self.marks[k]) for k in self.ks[1:]]

    def mass(self, k):
        """integral of g over (x_{k-1}, x_k)"""
        return float(self.G[self.marks[k]] - self.G[self.marks[k - 1]])


def _levels(ks, exponent):
    return np.power(2.0, -np.asarray(ks, dtype=float) * exponent)


def _as_sup(name, terms):
    terms = np.asarray(terms, dtype=float)
    return DiscreteConstant(name, float(np.max(terms)) if len(terms) else 0.0)


def _as_sum(name, terms, power):
    """the sum to the given power; the last term bounds the truncated geometric tail"""
    value = _norm(terms, power)
    rest = _norm(terms[:-1], power) if len(terms) > 1 else 0.0
    error = abs(value - rest) if math.isfinite(value) else 0.0
    return DiscreteConstant(name, value, error=error)


def _embedded(name, ks, local, p, r, beta):
    """calA_2 / calA_4 shape: the l^(pr/(p-r)) sum of local quantities over the dyadic levels"""
    terms = safe_product(_levels(ks, (1 - beta) * p / (p - r)), safe_power(local, p * r / (p - r)))
    return _as_sum(name, terms, (p - r) / (p * r))


def _tail_terms(tables, r, q, beta):
    """k, the terms 2^-k(1-beta) (int_{x_k}^{x_{k+1}} g)^(r/q) and V_p(a, x_k) for k >= N + 1"""
    first = tables.seq.N + 1 if tables.seq.N is not None else tables.ks[0]
    ks = [k for k in tables.ks[:-1] if k >= first]
    masses = np.array([tables.mass(k + 1) for k in ks])
    terms = safe_product(_levels(ks, 1 - beta), safe_power(masses, r / q))
    duals = np.array([tables.V_start[tables.marks[k]] for k in ks])
    return ks, terms, duals


def _B_constants(tables, p, q, r, beta, shift=0):
    ks, terms, duals = _tail_terms(tables, r, q, beta)
    tails = np.concatenate([np.cumsum(terms[::-1])[::-1], np.zeros(2)])
    values = {}
    if shift == 0:
        values["B1"] = _as_sup(ConstantName.B1, safe_product(safe_power(tails[: len(ks)], 1.0 / r), duals))
    if r < p:
        later = tails[shift : shift + len(ks)]
        body = safe_product(terms, safe_power(later, r / (p - r)), safe_power(duals, p * r / (p - r)))
        name = ConstantName.PB2 if shift else ConstantName.B2
        values[name.value] = _as_sum(name, body, (p - r) / (p * r))
    return values


def _A_constants(tables, p, q, r, beta):
    """calA_1..calA_4 and the per-k audit rows"""
    cells = tables.cells()
    ks = [k for k, _, _ in cells]
    sups, integrals, rows = [], [], []
    for k, lo, hi in cells:
        dual = tables.dual.within(lo, hi)
        masses = tables.g[lo:hi]
        sups.append(_cell_sup(masses, dual, q))
        integrals.append(_cell_integral(masses, dual, p, q) if q < p else math.nan)
        rows.append(
            {
                "k": k,
                "x_k": tables.seq.point(k),
                "W": tables.seq.values[k - tables.seq.start],
                "B": integrals[-1] if q < p else sups[-1],
                "V_cell": float(dual[-1]),
                "V_start": float(tables.V_start[hi]),
            }
        )
    sups, integrals = np.array(sups), np.array(integrals)
    values = {"A1": _as_sup(ConstantName.A1, safe_product(_levels(ks, (1 - beta) / r), sups))}
    if r < p:
        values["A2"] = _embedded(ConstantName.A2, ks, sups, p, r, beta)
    if q < p:
        values["A3"] = _as_sup(ConstantName.A3, safe_product(_levels(ks, (1 - beta) / r), integrals))
        if r < p:
            values["A4"] = _embedded(ConstantName.A4, ks, integrals, p, r, beta)
    return values, rows


def discrete_characterization(spec, seq, per_cell=None):
    """
    calA and calB constants over the dyadic cells of ``seq`` and the regime's
    combination calA + calB

    :type spec: hardy_certify.measure_core.ProblemSpec
    :type seq: hardy_certify.discretize.DiscretizingSequence
    :rtype: ConstantReport
    """
    p, q, r, beta = spec.p, spec.q, spec.r, spec.beta
    if p < 1:
        raise TrivialRegime("p={} < 1: the inequality only holds for trivial functions".format(p))
    report = ConstantReport("discrete", main_regime(p, q, r), sequence=seq)
    try:
        tables = _DyadicTables(spec, seq, per_cell)
    except DegenerateError as error:
        report.degenerate = str(error)
        return report
    report.notes.extend(tables.notes)
    report.notes.append("sums truncated at K={} ({})".format(seq.K, seq.truncation))
    values, rows = _A_constants(tables, p, q, r, beta)
    values.update(_B_constants(tables, p, q, r, beta))
    report.constants.update(values)
    report.tables.extend(rows)
    logger.info("discrete regime %s: %s", report.regime.value, report.characterization)
    return report


def proof_quantities(spec, seq, per_cell=None):
    """
    the intermediate quantities of the equivalence proofs: A_1..A_4 take the supremum
    or integral over (a, x_k) with V_p(a, t), B_2 starts its tail sum at k + 2

    :rtype: dict[str, DiscreteConstant]
    """
    p, q, r, beta = spec.p, spec.q, spec.r, spec.beta
    tables = _DyadicTables(spec, seq, per_cell)
    cells = tables.cells()
    ks = [k for k, _, _ in cells]
    sups, integrals = [], []
    for _, _, hi in cells:
        masses = tables.g[:hi]
        dual = tables.V_start[: hi + 1]
        sups.append(_cell_sup(masses, dual, q))
        integrals.append(_cell_integral(masses, dual, p, q) if q < p else math.nan)
    sups, integrals = np.array(sups), np.array(integrals)
    values = {"PA1": _as_sup(ConstantName.PA1, safe_product(_levels(ks, (1 - beta) / r), sups))}
    if r < p:
        values["PA2"] = _embedded(ConstantName.PA2, ks, sups, p, r, beta)
        values.update(_B_constants(tables, p, q, r, beta, shift=2))
    if q < p:
        values["PA3"] = _as_sup(ConstantName.PA3, safe_product(_levels(ks, (1 - beta) / r), integrals))
        if r < p:
            values["PA4"] = _embedded(ConstantName.PA4, ks, integrals, p, r, beta)
    return values


__all__ = [
    "SeqWeights",
    "DiscreteConstant",
    "embedding_constant",
    "discrete_hardy_constant",
    "local_hardy_B",
    "discrete_characterization",
    "proof_quantities",
]
