# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from hardy_certify.constants import DEFAULT_K_MAX, SEQUENCE_TOLERANCE
from hardy_certify.errors import BisectionFailure, DegenerateW, Divergent, IndexMismatch, RangeError
from hardy_certify.measure_core import (
    DEFAULT_SETTINGS,
    cell_integrals,
    ess_sup,
    integrate,
    safe_power,
    safe_product,
    tail_W,
)

logger = logging.getLogger(__name__)

_MAX_BISECTIONS = 400
_MAX_EXPANSIONS = 1100
_GRADED_POINTS = 24
_CELL_GRADING = 12
_RATIO_SLACK = 1e-6


class _Resolution(BisectionFailure):
    """the bracket collapsed to adjacent floats before reaching the tolerance"""


@dataclass(frozen=True)
class DiscretizingSequence(object):
    """
    points x_start < ... < x_K with W(x_k) = 2^-k; N is None when it is -inf,
    in which case the left end is truncated at ``start``
    """

    N: Optional[int]
    start: int
    points: Tuple[float, ...]
    values: Tuple[float, ...]
    truncation: str = "k_max"
    truncated: bool = True

    @property
    def K(self):
        return self.start + len(self.points) - 1

    @property
    def indices(self):
        return range(self.start, self.K + 1)

    def point(self, k):
        return self.points[k - self.start]

    def to_dict(self):
        return {
            "N": "-inf" if self.N is None else self.N,
            "start": self.start,
            "K": self.K,
            "points": list(self.points),
            "W_values": list(self.values),
            "truncated": self.truncated,
            "truncation": self.truncation,
        }


@dataclass(frozen=True)
class GeometricSeq(object):
    start: int
    terms: Tuple[float, ...]
    ratio_bound: float

    def __post_init__(self):
        if not 0 < self.ratio_bound < 1:
            raise RangeError("ratio_bound must lie in (0, 1), got {}".format(self.ratio_bound))
        terms = np.asarray(self.terms, dtype=float)
        if np.any(terms <= 0):
            raise RangeError("a geometrically decreasing sequence has positive terms")
        if len(terms) > 1 and np.max(terms[1:] / terms[:-1]) > self.ratio_bound * (1 + 1e-12):
            raise RangeError("sequence is not geometrically decreasing with ratio {}".format(self.ratio_bound))

    @classmethod
    def powers(cls, ratio, start, count):
        """tau_k = ratio^k for k = start .. start + count - 1"""
        return cls(start, tuple(ratio ** k for k in range(start, start + count)), ratio)

    def as_array(self):
        return np.asarray(self.terms, dtype=float)


@dataclass(frozen=True)
class RatioEntry(object):
    lhs: float
    rhs: float
    lower: float
    upper: float

    @property
    def ratio(self):
        if self.lhs == self.rhs:
            return 1.0
        if self.rhs == 0:
            return math.inf
        return self.lhs / self.rhs

    @property
    def ok(self):
        return self.lower * (1 - _RATIO_SLACK) <= self.ratio <= self.upper * (1 + _RATIO_SLACK)

    def to_dict(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "bounds": [self.lower, self.upper],
            "ok": self.ok,
        }


@dataclass
class GradedGrid(object):
    """nodes refining the cells of a discretizing sequence, ``marks`` locate the sequence points"""

    nodes: np.ndarray
    seq: DiscretizingSequence
    marks: np.ndarray
    w_end: float
    scale: float = 1.0
    notes: List[str] = field(default_factory=list)

    @property
    def n_cells(self):
        return len(self.nodes) - 1


def _tail(w, b, settings):
    tight = settings.tightened(1e-12)

    def evaluate(t):
        try:
            return tail_W(w, t, tight, b=b)
        except Divergent:
            return math.inf
        except DegenerateW:
            return 0.0

    return evaluate


def _bisect(W, target, lo, hi, w_lo, w_hi, tol):
    """root of the decreasing W on (lo, hi) with W(lo) >= target >= W(hi)"""
    for _ in range(_MAX_BISECTIONS):
        mid = lo + (hi - lo) / 2.0
        if not lo < mid < hi:
            raise _Resolution("bracket ({}, {}) collapsed before |W/2^-k - 1| <= {}".format(lo, hi, tol))
        value = W(mid)
        if value > w_lo * (1 + 1e-9) or value < w_hi * (1 - 1e-9):
            raise BisectionFailure("W is not monotone near {}: check the weight descriptor".format(mid))
        if abs(value / target - 1.0) <= tol:
            return mid, value
        if value > target:
            lo, w_lo = mid, value
        else:
            hi, w_hi = mid, value
    raise BisectionFailure("bisection for W = {} did not converge".format(target))


def _right_bracket(W, target, lo, b):
    if math.isfinite(b):
        return b, 0.0
    step = max(1.0, abs(lo))
    for _ in range(_MAX_EXPANSIONS):
        hi = lo + step
        value = W(hi)
        if value <= target:
            return hi, value
        step *= 2.0
    raise BisectionFailure("W stays above {} on the whole interval".format(target))


def _left_bracket(W, target, hi, a):
    if math.isfinite(a):
        return a, math.inf
    step = max(1.0, abs(hi))
    for _ in range(_MAX_EXPANSIONS):
        lo = hi - step
        value = W(lo)
        if value >= target:
            return lo, value
        step *= 2.0
    raise BisectionFailure("W stays below {} on the whole interval".format(target))


def build_discretizing_sequence(w, interval, K_max=DEFAULT_K_MAX, settings=None):
    """
    points x_k with W(x_k) = 2^-k up to the relative tolerance 1e-9, found by bisection
    on the continuous decreasing W; N follows sup{k : 2^-k >= W(t) for all t}

    :type w: WeightExpr
    :type interval: IntervalSpec
    :type K_max: int
    :rtype: DiscretizingSequence
    """
    settings = settings or DEFAULT_SETTINGS
    a, b = interval.a, interval.b
    W = _tail(w, b, settings)
    center = interval.center()
    w_center = W(center)
    if not math.isfinite(w_center):
        raise DegenerateW("W is infinite on the interval: the tail integral of w diverges")
    if not w_center > 0:
        raise DegenerateW("W vanishes at {}".format(center))
    w_a = W(a) if math.isfinite(a) else W(-math.inf)

    points, values = {}, {}
    truncation = "k_max"
    if math.isfinite(w_a):
        N = int(math.floor(-math.log2(w_a) + 1e-9))
        points[N], values[N] = a, w_a
        lo, w_lo, k = a, w_a, N + 1
        if not math.isfinite(a):
            target = 2.0 ** -k
            if w_center >= target:
                lo, w_lo = center, w_center
            else:
                lo, w_lo = _left_bracket(W, target, center, a)
    else:
        N = None
        k = int(math.floor(-math.log2(w_center))) + 1
        lo, w_lo = center, w_center

    while k <= K_max:
        target = 2.0 ** -k
        try:
            hi, w_hi = _right_bracket(W, target, lo, b)
            x, value = _bisect(W, target, lo, hi, w_lo, w_hi, SEQUENCE_TOLERANCE)
        except _Resolution:
            truncation = "resolution"
            logger.info("discretizing sequence truncated at k=%s by floating point resolution", k - 1)
            break
        points[k], values[k] = x, value
        lo, w_lo = x, value
        k += 1

    if N is None:
        if not points:
            raise DegenerateW("no point of the discretizing sequence could be placed")
        k = min(points) - 1
        scale = max(1.0, abs(a)) if math.isfinite(a) else 1.0
        while k > -K_max:
            target = 2.0 ** -k
            hi, w_hi = points[k + 1], values[k + 1]
            try:
                lo, w_lo = _left_bracket(W, target, hi, a)
                x, value = _bisect(W, target, lo, hi, w_lo, w_hi, SEQUENCE_TOLERANCE)
            except _Resolution:
                break
            if math.isfinite(a) and x - a < 1e-12 * scale:
                break
            points[k], values[k] = x, value
            k -= 1
        logger.info("N = -inf, discretizing sequence truncated on the left at k=%s", min(points))

    start = min(points)
    ordered = sorted(points)
    if ordered != list(range(start, start + len(ordered))):
        raise BisectionFailure("discretizing sequence has gaps")
    return DiscretizingSequence(
        N=N,
        start=start,
        points=tuple(points[i] for i in ordered),
        values=tuple(values[i] for i in ordered),
        truncation=truncation,
    )


def normalized_scale(w, interval, settings=None):
    """W(a) when finite, otherwise W at the interval center; dividing w by it makes grids scale-free"""
    settings = settings or DEFAULT_SETTINGS
    W = _tail(w, interval.b, settings)
    if math.isfinite(interval.a):
        value = W(interval.a)
        if math.isfinite(value) and value > 0:
            return value
    value = W(interval.center())
    if not (math.isfinite(value) and value > 0):
        raise DegenerateW("W is not finite and positive at {}".format(interval.center()))
    return value


def sequence_grid(spec, seq, per_cell=None):
    """
    graded grid refining each cell of ``seq`` into ``per_cell`` subcells plus points
    geometric toward the left end of every cell, deepest at a finite a; the tail
    cell up to a finite b is included

    :type seq: DiscretizingSequence
    :rtype: GradedGrid
    """
    per_cell = per_cell or spec.cell_points
    a, b = spec.interval.a, spec.interval.b
    points = [x for x in seq.points if math.isfinite(x)]
    notes = []
    if seq.N is None or not math.isfinite(seq.points[0]):
        notes.append("left end truncated at {}".format(points[0]))
    if math.isfinite(b) and points[-1] < b:
        points.append(b)
    else:
        notes.append("right tail truncated at {}".format(points[-1]))
    pieces = []
    left_end = seq.N is not None and math.isfinite(a)
    for i, (lo, hi) in enumerate(zip(points[:-1], points[1:])):
        depth = _GRADED_POINTS if i == 0 and left_end else _CELL_GRADING
        pieces.append(np.linspace(lo, hi, per_cell + 1)[:-1])
        pieces.append(lo + (hi - lo) * np.power(2.0, -np.arange(1, depth + 1)))
    pieces.append(np.array([points[-1]]))
    nodes = np.unique(np.concatenate(pieces))
    marks = np.searchsorted(nodes, [x for x in seq.points if math.isfinite(x)])
    if nodes[-1] == b:
        w_end = 0.0
    else:
        w_end = tail_W(spec.w, float(nodes[-1]), spec.settings.tightened(1e-12), b=b)
    return GradedGrid(nodes=nodes, seq=seq, marks=marks, w_end=w_end, notes=notes)


def graded_grid(spec, per_cell=None):
    """
    grid aligned with the discretizing sequence of W normalized by ``normalized_scale``,
    so rescaling w leaves the grid unchanged

    :rtype: GradedGrid
    """
    scale = normalized_scale(spec.w, spec.interval, spec.settings)
    seq = build_discretizing_sequence(spec.w.scaled(1.0 / scale), spec.interval, spec.k_max, spec.settings)
    grid = sequence_grid(spec, seq, per_cell)
    grid.scale = scale
    return grid


def _sum_sum_constant(alpha, rho):
    if alpha <= 1:
        return 1.0 / (1.0 - rho)
    conjugate = alpha / (alpha - 1.0)
    theta = rho ** (1.0 / (2.0 * alpha))
    return (1.0 - theta ** conjugate) ** (-alpha / conjugate) / (1.0 - math.sqrt(rho))


def _entry(lhs, rhs, lower, upper):
    return RatioEntry(float(lhs), float(rhs), float(lower), float(upper))


def check_geometric_equivalences(tau, a_seq, alpha):
    """
    both sides of the sup-sum, sum-sum and sum-sup equivalences for a geometrically
    decreasing tau, with two-sided bounds depending only on the ratio bound and alpha

    :type tau: GeometricSeq
    :type a_seq: list[float]
    :type alpha: float
    :rtype: dict[str, RatioEntry]
    """
    t = tau.as_array()
    a = np.asarray(a_seq, dtype=float)
    if len(a) != len(t):
        raise IndexMismatch("tau has {} terms but the sequence has {}".format(len(t), len(a)))
    if not alpha > 0:
        raise RangeError("alpha must be positive, got {}".format(alpha))
    rho = tau.ratio_bound
    partial = np.cumsum(a)
    running = np.maximum.accumulate(a)
    tail_max = np.maximum.accumulate(a[::-1])[::-1]
    head_max = np.maximum.accumulate(t)
    return {
        "sup-sum": _entry(np.max(t * partial), np.max(t * a), 1.0, 1.0 / (1.0 - rho)),
        "sum-sum": _entry(
            np.sum(t * safe_power(partial, alpha)), np.sum(t * safe_power(a, alpha)), 1.0, _sum_sum_constant(alpha, rho)
        ),
        "sum-sup": _entry(np.sum(t * running), np.sum(t * a), 1.0, 1.0 / (1.0 - rho)),
        "sup-interchange": _entry(np.max(t * tail_max), np.max(a * head_max), 1.0, 1.0),
    }


def _cell_integrals(g, points, settings):
    out = []
    for lo, hi in zip(points[:-1], points[1:]):
        try:
            out.append(integrate(g, lo, hi, settings))
        except Divergent:
            out.append(math.inf)
    return np.asarray(out)


def check_interval_equivalences(tau, points, g, alpha, sigma=None, settings=None):
    """
    both sides of the interval forms of the equivalences over the cells of a strictly
    increasing sequence, including the three-term forms with a nondecreasing sigma

    :type tau: GeometricSeq indexed like the cells (x_{k-1}, x_k)
    :type points: DiscretizingSequence
    :type g: callable
    :rtype: dict[str, RatioEntry]
    """
    settings = settings or DEFAULT_SETTINGS
    xs = [x for x in points.points if math.isfinite(x)]
    t = tau.as_array()
    if len(t) != len(xs) - 1:
        raise IndexMismatch("tau has {} terms but there are {} cells".format(len(t), len(xs) - 1))
    sigma = np.ones(len(xs)) if sigma is None else np.asarray(sigma, dtype=float)
    if len(sigma) != len(xs):
        raise IndexMismatch("sigma needs one term per point, got {} for {}".format(len(sigma), len(xs)))
    if np.any(np.diff(sigma) < 0) or np.any(sigma <= 0):
        raise RangeError("sigma must be positive and nondecreasing")
    rho = tau.ratio_bound
    cells = _cell_integrals(g, xs, settings)
    cumulative = np.concatenate([[0.0], np.cumsum(cells)])
    sups = np.array([ess_sup(g, lo, hi, settings) for lo, hi in zip(xs[:-1], xs[1:])])
    constant = _sum_sum_constant(alpha, rho)

    three = np.empty(len(t))
    for k in range(1, len(xs)):
        spans = safe_power(cumulative[k] - cumulative[:k], alpha)
        three[k - 1] = np.max(safe_product(spans, sigma[:k]))
    local = safe_product(safe_power(cells, alpha), sigma[:-1])
    three_sup = (1.0 - rho ** (1.0 / alpha)) ** (-alpha)
    return {
        "dec-sup-sum": _entry(np.max(t * cumulative[1:]), np.max(t * cells), 1.0, 1.0 / (1.0 - rho)),
        "dec-sum-sum": _entry(
            np.sum(t * safe_power(cumulative[1:], alpha)), np.sum(t * safe_power(cells, alpha)), 1.0, constant
        ),
        "dec-sum-sup": _entry(np.sum(t * np.maximum.accumulate(sups)), np.sum(t * sups), 1.0, 1.0 / (1.0 - rho)),
        "3-sup-equiv": _entry(np.max(t * three), np.max(t * local), 1.0, three_sup),
        "3-sum-equiv": _entry(np.sum(t * three), np.sum(t * local), 1.0, constant),
    }


def check_dyadic_summation(w, points, alpha, h, settings=None, n=None, per_cell=64):
    """
    the integral and supremum against W^alpha compared with dyadic sums over the
    discretizing sequence, both truncated at x_K; the term at x_K has no cell to
    its right, so the lower integral bound only covers the sum without it

    :type w: WeightExpr
    :type points: DiscretizingSequence
    :type h: callable nondecreasing
    :rtype: dict[str, RatioEntry]
    """
    settings = settings or DEFAULT_SETTINGS
    if not alpha > 0:
        raise RangeError("alpha must be positive, got {}".format(alpha))
    n = points.start if n is None else n
    ks = [k for k in points.indices if k >= n and math.isfinite(points.point(k))]
    if len(ks) < 2:
        raise IndexMismatch("need at least one cell after x_{}".format(n))
    xs = np.array([points.point(k) for k in ks])
    nodes = np.unique(np.concatenate([np.linspace(lo, hi, per_cell + 1) for lo, hi in zip(xs[:-1], xs[1:])]))
    pieces = cell_integrals(w, nodes, settings.tightened(1e-12), getattr(w, "breakpoints", ()))
    W_nodes = np.concatenate([np.cumsum(pieces[::-1])[::-1], [0.0]]) + points.values[ks[-1] - points.start]
    mids = (nodes[:-1] + nodes[1:]) / 2.0
    with np.errstate(all="ignore"):
        h_mid = np.asarray(h(mids), dtype=float)
        h_nodes = np.asarray(h(nodes), dtype=float)
        h_points = np.asarray(h(xs[1:]), dtype=float)
    measure = (np.power(W_nodes[:-1], alpha) - np.power(W_nodes[1:], alpha)) / alpha
    levels = np.power(2.0, -np.asarray(ks[1:], dtype=float) * alpha)
    lhs_int = float(np.sum(safe_product(measure, h_mid)))
    terms = safe_product(levels, h_points)
    rhs_int = float(np.sum(terms))
    covered = 1.0 - float(terms[-1]) / rhs_int if 0 < rhs_int < math.inf else 1.0
    lhs_sup = float(np.max(safe_product(np.power(W_nodes[1:], alpha), h_nodes[1:])))
    rhs_sup = float(np.max(terms))
    return {
        "int.equiv": _entry(lhs_int, rhs_int, covered * (1.0 - 2.0 ** -alpha) / alpha, (2.0 ** alpha - 1.0) / alpha),
        "sup.equiv": _entry(lhs_sup, rhs_sup, 1.0, 2.0 ** alpha),
    }


__all__ = [
    "DiscretizingSequence",
    "GeometricSeq",
    "GradedGrid",
    "RatioEntry",
    "build_discretizing_sequence",
    "check_geometric_equivalences",
    "check_interval_equivalences",
    "check_dyadic_summation",
    "graded_grid",
    "normalized_scale",
    "sequence_grid",
]

