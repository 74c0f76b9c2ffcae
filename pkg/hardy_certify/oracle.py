# -*- coding: utf-8 -*-
"""
Brute-force lower estimates of best constants: the ratio of both sides of an
inequality is maximized over piecewise-constant candidates (or finite sequences)
by a spike scan followed by multiplicative coordinate ascent.
"""
from __future__ import absolute_import, unicode_literals

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from hardy_certify.discretize import build_discretizing_sequence, normalized_scale, sequence_grid
from hardy_certify.errors import Divergent, EmptyRange, InconsistentParametrizations, RangeError, ZeroFunction
from hardy_certify.measure_core import WeightTables, cell_integrals, integrate, safe_power, safe_product, tail_W

logger = logging.getLogger(__name__)

MIN_CELLS = 64
N_BLOCKS = 64
CONSISTENCY_TOLERANCE = 0.05
_GAUSS_ORDER = 5
_SPIKE_SCAN = 512
_QUIET_SWEEPS = 3
_MAX_SWEEPS = 80


def worker_count():
    """worker threads for restarts, capped by HARDY_CERT_THREADS"""
    value = os.getenv("HARDY_CERT_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise RangeError("HARDY_CERT_THREADS must be an integer, got {!r}".format(value))
    return os.cpu_count() or 1


@dataclass
class GridFunction(object):
    """piecewise-constant nonnegative function, ``values[j]`` on (grid[j], grid[j+1])"""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if len(self.values) != len(self.grid) - 1:
            raise RangeError("{} values for {} cells".format(len(self.values), len(self.grid) - 1))
        if np.any(self.values < 0):
            raise RangeError("grid functions are nonnegative")

    def scaled(self, lam):
        return GridFunction(self.grid, self.values * lam)

    def to_dict(self):
        return {"grid": self.grid.tolist(), "values": self.values.tolist()}


@dataclass
class OracleResult(object):
    estimate: float
    argmax: object
    n_cells: int
    restarts: int
    seed: int
    converged: bool
    trace: List[Tuple[int, float]] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self):
        if isinstance(self.argmax, GridFunction):
            argmax = self.argmax.to_dict()
        else:
            argmax = [float(x) for x in self.argmax]
        return {
            "estimate": self.estimate,
            "argmax": argmax,
            "n_cells": self.n_cells,
            "restarts": self.restarts,
            "seed": self.seed,
            "converged": self.converged,
            "trace": [[int(i), float(v)] for i, v in self.trace],
            "details": dict(self.details),
        }


class _CellGrid(object):
    """gauss points on both halves of every cell, with u folded into the weights"""

    def __init__(self, nodes, u):
        self.nodes = np.asarray(nodes, dtype=float)
        self.widths = np.diff(self.nodes)
        x, weights = np.polynomial.legendre.leggauss(_GAUSS_ORDER)
        half = self.widths / 2.0
        starts = np.stack([self.nodes[:-1], self.nodes[:-1] + half], axis=1)
        points = starts[:, :, None] + (half[:, None, None] * (x[None, None, :] + 1.0) / 2.0)
        self.offsets = points - self.nodes[:-1, None, None]
        with np.errstate(all="ignore"):
            values = np.asarray(u(points), dtype=float)
        values = np.where(np.isfinite(values), values, 0.0)
        self.u_weights = values * weights[None, None, :] * (half[:, None, None] / 2.0)

    def primitive(self, f):
        """F = int_start^t f at the nodes"""
        return np.concatenate([[0.0], np.cumsum(f * self.widths)])

    def half_integrals(self, f, power, monotone=False):
        """
        integral of F^power u over each half cell, F the primitive of f; with
        ``monotone`` the integrand is f u itself
        """
        if monotone:
            return np.sum(self.u_weights, axis=2) * f[:, None]
        F = self.primitive(f)
        inside = F[:-1, None, None] + f[:, None, None] * self.offsets
        return np.sum(safe_power(inside, power) * self.u_weights, axis=2)

    def running(self, f, power, monotone=False):
        """the inner integral at every node and cell midpoint"""
        return np.concatenate([[0.0], np.cumsum(self.half_integrals(f, power, monotone).ravel())])


class _Problem(object):
    """
    (int (int_a^x F^q u)^(r/q) w dx)^(1/r) / (sum f^p c)^(1/p) on a fixed grid;
    ``monotone`` uses f u instead of F^q u and the outer power q
    """

    def __init__(self, cells, W_half, w_end, rhs, p, q, r, monotone=False):
        self.cells = cells
        self.mu = W_half[:-1] - W_half[1:]
        self.w_end = w_end
        self.rhs = rhs
        self.p, self.q, self.r = p, q, r
        self.monotone = monotone

    def lhs(self, f):
        H = self.cells.running(f, self.q, self.monotone)
        P = safe_power(H, self.r if self.monotone else self.r / self.q)
        total = np.sum(safe_product(self.mu, 0.5 * (P[:-1] + P[1:])))
        return float(total + safe_product(P[-1:], [self.w_end])[0])

    def rhs_value(self, f):
        return float(np.sum(safe_product(safe_power(f, self.p), self.rhs)))

    def __call__(self, f):
        denominator = self.rhs_value(f)
        if not denominator > 0:
            raise ZeroFunction("candidate has zero norm")
        if not math.isfinite(denominator):
            return 0.0
        return self.lhs(f) ** (1.0 / self.r) / denominator ** (1.0 / self.p)


class _Monotone(object):
    """a problem on nondecreasing f written through nonnegative increments"""

    def __init__(self, problem, tail_rhs):
        self.problem = problem
        self.tail_rhs = tail_rhs

    def __call__(self, increments):
        f = np.cumsum(increments)
        denominator = self.problem.rhs_value(f) + safe_product([f[-1] ** self.problem.p], [self.tail_rhs])[0]
        if not denominator > 0:
            raise ZeroFunction("candidate has zero norm")
        if not math.isfinite(denominator):
            return 0.0
        return self.problem.lhs(f) ** (1.0 / self.problem.r) / denominator ** (1.0 / self.problem.p)


def _blocks(n, count):
    edges = np.unique(np.linspace(0, n, min(count, n) + 1).astype(int))
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]


def _safe_eval(evaluate, x):
    try:
        return evaluate(x)
    except ZeroFunction:
        return 0.0


def _ascend(evaluate, x, blocks, trace, min_step=1e-3, tolerance=1e-3, max_sweeps=_MAX_SWEEPS):
    """
    multiplicative coordinate ascent over blocks of coordinates; every block keeps
    its own log-step, doubled on success and halved on failure
    """
    value = _safe_eval(evaluate, x)
    steps = np.ones(len(blocks))
    quiet = 0
    start = len(trace)
    for sweep in range(max_sweeps):
        before = value
        for b, (lo, hi) in enumerate(blocks):
            if steps[b] < min_step:
                continue
            moved = False
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[lo:hi] *= math.exp(sign * steps[b])
                candidate = _safe_eval(evaluate, trial)
                if candidate > value * (1 + 1e-12):
                    x, value, moved = trial, candidate, True
                    break
            steps[b] = min(steps[b] * 2.0, 8.0) if moved else steps[b] / 2.0
        trace.append((start + sweep, value))
        gain = (value - before) / before if before > 0 else (math.inf if value > 0 else 0.0)
        quiet = quiet + 1 if gain < tolerance else 0
        if quiet >= _QUIET_SWEEPS or np.all(steps < min_step):
            return x, value, True
    return x, value, False


def _spike_scan(evaluate, n, make):
    """value of every single-cell indicator, sampled when n is large and refined around the best"""
    if n <= _SPIKE_SCAN:
        candidates = range(n)
    else:
        stride = int(math.ceil(n / float(_SPIKE_SCAN)))
        candidates = range(0, n, stride)
    best, best_index = -1.0, 0
    for j in candidates:
        value = _safe_eval(evaluate, make(j))
        if value > best:
            best, best_index = value, j
    if n > _SPIKE_SCAN:
        for j in range(max(0, best_index - stride), min(n, best_index + stride + 1)):
            value = _safe_eval(evaluate, make(j))
            if value > best:
                best, best_index = value, j
    return best_index, best


def _indicator(n, j, floor=0.0):
    x = np.full(n, floor)
    x[j] = 1.0
    return x


def _restart(evaluate, n, index, seed, start, blocks, min_step, tolerance):
    trace = []
    if index == 0:
        x = start.copy()
    else:
        rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
        x = np.empty(n)
        for lo, hi in blocks:
            x[lo:hi] = math.exp(rng.standard_normal())
    x, value, converged = _ascend(evaluate, x, blocks, trace, min_step, tolerance)
    if index == 0 and len(blocks) < n:
        x, value, converged = _refine(evaluate, x, value, blocks, trace, min_step, tolerance)
    logger.debug("restart %s: %s after %s sweeps", index, value, len(trace))
    return value, index, x, converged, trace


def _refine(evaluate, x, value, blocks, trace, min_step, tolerance):
    """split the blocks around the heaviest one into single cells and ascend again"""
    weights = np.array([np.sum(x[lo:hi]) for lo, hi in blocks])
    heavy = int(np.argmax(weights))
    lo = blocks[max(heavy - 1, 0)][0]
    hi = blocks[min(heavy + 1, len(blocks) - 1)][1]
    fine = _blocks(hi - lo, N_BLOCKS)
    local = [(lo + a, lo + b) for a, b in fine]
    refined = [blk for blk in blocks if blk[1] <= lo] + local + [blk for blk in blocks if blk[0] >= hi]
    x2, value2, converged = _ascend(evaluate, x, refined, trace, min_step, tolerance)
    if value2 >= value:
        return x2, value2, converged
    return x, value, converged


def _maximize(evaluate, n, restarts, seed, start, blocks, min_step=1e-3, tolerance=1e-3):
    """restarts run on worker threads; the best is chosen by (value, restart index)"""
    restarts = max(1, int(restarts))
    with ThreadPoolExecutor(max_workers=min(worker_count(), restarts)) as executor:
        results = list(
            executor.map(
                lambda i: _restart(evaluate, n, i, seed, start, blocks, min_step, tolerance),
                range(restarts),
            )
        )
    results.sort(key=lambda item: (-item[0], item[1]))
    value, index, x, converged, trace = results[0]
    return value, x, converged, trace, index


class _OracleGrid(object):
    """graded grid of about ``n_cells`` cells aligned with the normalized discretizing sequence"""

    def __init__(self, spec, n_cells):
        if n_cells < MIN_CELLS:
            raise RangeError("n_cells must be at least {}, got {}".format(MIN_CELLS, n_cells))
        scale = normalized_scale(spec.w, spec.interval, spec.settings)
        seq = build_discretizing_sequence(spec.w.scaled(1.0 / scale), spec.interval, spec.k_max, spec.settings)
        dyadic = sum(1 for x in seq.points if math.isfinite(x))
        per_cell = max(2, n_cells // max(dyadic, 1))
        self.grid = sequence_grid(spec, seq, per_cell)
        self.tables = WeightTables(spec, self.grid.nodes, self.grid.w_end)
        self.spec = spec
        half = np.empty(2 * len(self.tables.W) - 1)
        half[0::2] = self.tables.W
        half[1::2] = self.tables.W_mid
        self.W_half = half
        self.nodes = self.grid.nodes
        self.cells = _CellGrid(self.nodes, spec.u)
        self.v_cells = cell_integrals(spec.v, self.nodes, spec.settings, spec.v.breakpoints)

    @property
    def n(self):
        return len(self.nodes) - 1

    def main_problem(self):
        spec = self.spec
        return _Problem(self.cells, self.W_half, self.grid.w_end, self.v_cells, spec.p, spec.q, spec.r)

    def monotone_problem(self):
        spec = self.spec
        return _Problem(self.cells, self.W_half, self.grid.w_end, self.v_cells, spec.p, 1.0, spec.q, monotone=True)

    def tail_v(self):
        try:
            return integrate(self.spec.v, float(self.nodes[-1]), self.spec.interval.b, self.spec.settings)
        except Divergent:
            return math.inf

    def reduced_problem(self):
        """the main problem in (1, 1/p, q/p) with h weighted by the cell integrals of int_x^b v"""
        spec = self.spec
        tails = self.tables.tail_v()
        moment = cell_integrals(
            lambda s: s * spec.v(s), self.nodes, spec.settings, spec.v.breakpoints
        ) - self.nodes[:-1] * self.v_cells
        weights = safe_product(self.cells.widths, tails[1:]) + moment
        return _Problem(self.cells, self.W_half, self.grid.w_end, weights, 1.0, 1.0 / spec.p, spec.q / spec.p)


def _w_end(spec, nodes):
    end = float(nodes[-1])
    if end >= spec.interval.b:
        return 0.0
    return tail_W(spec.w, end, spec.settings.tightened(1e-12), b=spec.interval.b)


def ratio_main(f, spec):
    """
    ratio of the two sides of the iterated inequality at a grid function, the
    outer integral past the last node bounded below by its value there

    :type f: GridFunction
    :type spec: hardy_certify.measure_core.ProblemSpec
    :rtype: float
    """
    if not np.any(f.values > 0):
        raise ZeroFunction("f vanishes identically")
    w_end = _w_end(spec, f.grid)
    tables = WeightTables(spec, f.grid, w_end)
    half = np.empty(2 * len(tables.W) - 1)
    half[0::2] = tables.W
    half[1::2] = tables.W_mid
    v_cells = cell_integrals(spec.v, f.grid, spec.settings, spec.v.breakpoints)
    problem = _Problem(_CellGrid(f.grid, spec.u), half, w_end, v_cells, spec.p, spec.q, spec.r)
    return problem(f.values)


def _best_spike(evaluate, n):
    return _spike_scan(evaluate, n, lambda j: _indicator(n, j))


def _start_from(n, j, floor=1e-8):
    return _indicator(n, j, floor)


def maximize_ratio_main(spec, n_cells=4096, restarts=32, seed=42):
    """
    :type spec: hardy_certify.measure_core.ProblemSpec
    :rtype: OracleResult
    """
    grid = _OracleGrid(spec, n_cells)
    problem = grid.main_problem()
    n = grid.n
    spike, spike_value = _best_spike(problem, n)
    logger.info("main oracle: %s cells, best spike %s at cell %s", n, spike_value, spike)
    if spike_value <= 0:
        return OracleResult(0.0, GridFunction(grid.nodes, _indicator(n, spike)), n, restarts, seed, True,
                            details={"degenerate": "every spike has zero ratio"})
    value, x, converged, trace, index = _maximize(
        problem, n, restarts, seed, _start_from(n, spike), _blocks(n, N_BLOCKS)
    )
    if spike_value > value:
        value, x = spike_value, _indicator(n, spike)
    return OracleResult(
        float(value),
        GridFunction(grid.nodes, x / np.max(x)),
        n,
        restarts,
        seed,
        converged,
        trace,
        {"spike": [int(spike), float(spike_value)], "best_restart": index},
    )


def _increments(f):
    return np.diff(np.concatenate([[0.0], f]))


def maximize_ratio_monotone(spec, n_cells=4096, restarts=32, seed=42):
    """
    best constant over nondecreasing functions, from nonnegative increments of a
    step function and from the reduction f^p = int_a^x h, seeded with each other

    :rtype: OracleResult
    """
    grid = _OracleGrid(spec, n_cells)
    n = grid.n
    blocks = _blocks(n, N_BLOCKS)
    stepwise = _Monotone(grid.monotone_problem(), grid.tail_v())
    spike, spike_value = _best_spike(stepwise, n)
    if spike_value <= 0:
        return OracleResult(0.0, GridFunction(grid.nodes, np.cumsum(_indicator(n, spike))), n, restarts, seed, True,
                            details={"degenerate": "every nondecreasing step has zero ratio"})
    value_a, x_a, converged_a, trace, _ = _maximize(stepwise, n, restarts, seed, _start_from(n, spike), blocks)
    f_a = np.cumsum(x_a)

    reduced = grid.reduced_problem()
    p = spec.p
    widths = grid.cells.widths

    def substituted(h):
        return reduced(h) ** (1.0 / p)

    start_b = np.maximum(_increments(safe_power(f_a, p)), 0.0) / widths
    start_b = np.where(start_b > 0, start_b, 1e-8 * np.max(start_b))
    value_b, x_b, converged_b, trace_b, _ = _maximize(substituted, n, max(1, restarts // 4), seed, start_b, blocks)
    if not math.isfinite(value_b):
        value_b = 0.0
    top = max(value_a, value_b)
    agreement = abs(value_a - value_b) / top if top > 0 else 0.0
    logger.info("monotone oracle: increments %s, substitution %s", value_a, value_b)
    if agreement > CONSISTENCY_TOLERANCE:
        raise InconsistentParametrizations(
            "monotone parametrizations disagree: {} vs {} ({:.1%})".format(value_a, value_b, agreement)
        )
    if value_b > value_a:
        F = np.concatenate([[0.0], np.cumsum(x_b * widths)])
        f = safe_power(F[1:], 1.0 / p)
    else:
        f = f_a
    return OracleResult(
        float(max(value_a, value_b)),
        GridFunction(grid.nodes, f / np.max(f)),
        n,
        restarts,
        seed,
        converged_a and converged_b,
        trace + trace_b,
        {"increments": float(value_a), "substitution": float(value_b), "spike": [int(spike), float(spike_value)]},
    )


def _sequence_oracle(evaluate, n, restarts, seed, exact_spike=False):
    spike, spike_value = _spike_scan(evaluate, n, lambda j: _indicator(n, j))
    if spike_value <= 0:
        return 0.0, _indicator(n, spike), True, [], {"degenerate": "every spike has zero ratio"}
    if exact_spike:
        return spike_value, _indicator(n, spike), True, [(0, spike_value)], {"spike": int(spike)}
    blocks = [(j, j + 1) for j in range(n)]
    value, x, converged, trace, index = _maximize(
        evaluate, n, restarts, seed, _start_from(n, spike, 1e-6), blocks, min_step=1e-9, tolerance=1e-10
    )
    if spike_value >= value:
        return spike_value, _indicator(n, spike), converged, trace, {"spike": int(spike)}
    return value, x / np.max(x), converged, trace, {"spike": int(spike), "best_restart": index}


def maximize_discrete_embedding(sw, p, q, restarts=8, seed=42):
    """
    (sum a^q v^q)^(1/q) / (sum a^p w^p)^(1/p) over a >= 0; for p <= q a spike is optimal

    :type sw: hardy_certify.constants_discrete.SeqWeights
    :rtype: OracleResult
    """
    n = len(sw.v)
    if n > 16:
        raise RangeError("brute force embedding needs at most 16 terms, got {}".format(n))
    v, w = sw.a, sw.b

    def evaluate(a):
        denominator = np.sum(safe_power(a * w, p))
        if not denominator > 0:
            raise ZeroFunction("sequence vanishes")
        return float(np.sum(safe_power(a * v, q)) ** (1.0 / q) / denominator ** (1.0 / p))

    value, x, converged, trace, details = _sequence_oracle(evaluate, n, restarts, seed, exact_spike=p <= q)
    return OracleResult(float(value), x, n, restarts, seed, converged, trace, details)


def maximize_discrete_hardy(sw, p, q, restarts=8, seed=42):
    """
    (sum_k (sum_{i<=k} x_i b_i)^q a_k)^(1/q) / (sum x^p)^(1/p) over x >= 0

    :type sw: SeqWeights with a_k = v, b_k = w
    :rtype: OracleResult
    """
    n = len(sw.v)
    if n > 12:
        raise RangeError("brute force hardy needs at most 12 terms, got {}".format(n))
    a, b = sw.a, sw.b

    def evaluate(x):
        denominator = np.sum(safe_power(x, p))
        if not denominator > 0:
            raise ZeroFunction("sequence vanishes")
        heads = np.cumsum(x * b)
        return float(np.sum(safe_product(safe_power(heads, q), a)) ** (1.0 / q) / denominator ** (1.0 / p))

    value, x, converged, trace, details = _sequence_oracle(evaluate, n, restarts, seed)
    return OracleResult(float(value), x, n, restarts, seed, converged, trace, details)


def _cell_nodes(cell, n_cells):
    lo, hi = cell
    if not lo < hi:
        raise EmptyRange("cell must satisfy lo < hi, got ({}, {})".format(lo, hi))
    grading = lo + (hi - lo) * np.power(2.0, -np.arange(1, 25))
    return np.unique(np.concatenate([np.linspace(lo, hi, n_cells + 1), grading]))


def maximize_local_hardy(u, v, p, q, cell, n_cells=256, restarts=4, seed=42, settings=None):
    """
    (int (int_lo^t h)^q u)^(1/q) / (int h^p v)^(1/p) over h >= 0 on one cell, the
    brute-force counterpart of the local hardy quantity

    :rtype: OracleResult
    """
    nodes = _cell_nodes(cell, n_cells)
    cells = _CellGrid(nodes, u)
    v_cells = cell_integrals(v, nodes, settings, getattr(v, "breakpoints", ()))
    n = len(nodes) - 1

    def evaluate(h):
        denominator = np.sum(safe_product(safe_power(h, p), v_cells))
        if not denominator > 0:
            raise ZeroFunction("candidate vanishes")
        inner = cells.running(h, q)[-1]
        return float(inner ** (1.0 / q) / denominator ** (1.0 / p))

    value, x, converged, trace, details = _sequence_oracle(evaluate, n, restarts, seed)
    return OracleResult(float(value), GridFunction(nodes, x), n, restarts, seed, converged, trace, details)


def maximize_dual_ratio(v, p, cell, n_cells=256, restarts=4, seed=42, settings=None):
    """
    int g / (int g^p v)^(1/p) over g >= 0 on one cell, whose supremum is V_p of the cell

    :rtype: OracleResult
    """
    nodes = _cell_nodes(cell, n_cells)
    widths = np.diff(nodes)
    v_cells = cell_integrals(v, nodes, settings, getattr(v, "breakpoints", ()))
    n = len(nodes) - 1

    def evaluate(g):
        denominator = np.sum(safe_product(safe_power(g, p), v_cells))
        if not denominator > 0:
            raise ZeroFunction("candidate vanishes")
        return float(np.sum(g * widths) / denominator ** (1.0 / p))

    value, x, converged, trace, details = _sequence_oracle(evaluate, n, restarts, seed)
    return OracleResult(float(value), GridFunction(nodes, x), n, restarts, seed, converged, trace, details)


__all__ = [
    "GridFunction",
    "OracleResult",
    "ratio_main",
    "maximize_ratio_main",
    "maximize_ratio_monotone",
    "maximize_discrete_embedding",
    "maximize_discrete_hardy",
    "maximize_local_hardy",
    "maximize_dual_ratio",
    "worker_count",
]
