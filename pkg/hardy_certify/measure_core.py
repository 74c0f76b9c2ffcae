# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import heapq
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from hardy_certify.errors import (
    DegenerateW,
    DepthExceeded,
    Divergent,
    NonPositive,
    OutOfDomain,
    RangeError,
    SchemaError,
)

logger = logging.getLogger(__name__)

GAUSS_ORDER = 7
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)
_INITIAL_CELLS = 8
_MAX_SPLITS = 20000
_SAFETY = 4.0
_SHELL_DEPTH = 8
_SHELLS = 12
_SHELL_SPREAD = 1e-2
_SHELL_ROUNDING = 1e-8
_SUP_ZOOM_POINTS = 17
_SUP_REL_CHANGE = 1e-6


@dataclass(frozen=True)
class QuadSettings(object):
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_depth: int = 48
    sup_grid: int = 4096

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise RangeError(
                "tolerances must be positive, got rel_tol={} abs_tol={}".format(self.rel_tol, self.abs_tol)
            )
        if self.max_depth < 8:
            raise RangeError("max_depth must be at least 8, got {}".format(self.max_depth))
        if self.sup_grid < 16:
            raise RangeError("sup_grid must be at least 16, got {}".format(self.sup_grid))

    def tightened(self, rel_tol):
        """copy with a sharper relative tolerance and a negligible absolute one"""
        return replace(self, rel_tol=min(self.rel_tol, rel_tol), abs_tol=min(self.abs_tol, 1e-300))


DEFAULT_SETTINGS = QuadSettings()


@dataclass(frozen=True)
class IntervalSpec(object):
    a: float
    b: float

    def __post_init__(self):
        if math.isnan(self.a) or math.isnan(self.b) or not self.a < self.b:
            raise RangeError("interval needs a < b, got ({}, {})".format(self.a, self.b))

    @property
    def bounded(self):
        return math.isfinite(self.a) and math.isfinite(self.b)

    def center(self):
        """a reference interior point, used to normalize tail integrals"""
        if self.bounded:
            return (self.a + self.b) / 2.0
        if math.isfinite(self.a):
            return self.a + 1.0
        if math.isfinite(self.b):
            return self.b - 1.0
        return 0.0

    def contains(self, t):
        return self.a < t < self.b


@dataclass(frozen=True)
class ExponentSet(object):
    """
    exponents of the iterated inequality; p < 1 is accepted here and rejected
    by the main characterization, the monotone one allows it
    """

    p: float
    q: float
    r: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("p", "q", "r"):
            value = getattr(self, name)
            if not (0 < value < math.inf):
                raise RangeError("{} must be positive and finite, got {}".format(name, value))
        if not (-math.inf < self.beta < 1):
            raise RangeError("beta must be < 1, got {}".format(self.beta))


class WeightExpr(object):
    """
    symbolic weight descriptor with vectorized point evaluation

    forms: power c*t^alpha, exp_scale c*e^(lambda*t), shifted_power c*|t-t0|^alpha,
    product of weights, piecewise weights tiling an interval
    """

    FORMS = ("power", "exp_scale", "shifted_power", "product", "piecewise")

    def __init__(self, form, params=(), children=(), bounds=(), domain=None):
        if form not in self.FORMS:
            raise SchemaError("unknown weight form '{}'".format(form), key="form")
        self.form = form
        self.params = tuple(float(x) for x in params)
        self.children = tuple(children)
        self.bounds = tuple(float(x) for x in bounds)
        self.domain = domain
        if form in ("power", "exp_scale", "shifted_power") and self.params[0] < 0:
            raise SchemaError("weight coefficient must be non-negative, got {}".format(self.params[0]), key="c")
        if form == "piecewise":
            if len(self.bounds) != len(self.children) + 1 or not self.children:
                raise SchemaError("piecewise weight needs one piece per subinterval", key="pieces")
            if any(lo >= hi for lo, hi in zip(self.bounds[:-1], self.bounds[1:])):
                raise SchemaError("piecewise pieces must tile the interval without gap or overlap", key="pieces")

    @classmethod
    def power(cls, c, alpha):
        return cls("power", (c, alpha))

    @classmethod
    def exp_scale(cls, c, lam):
        return cls("exp_scale", (c, lam))

    @classmethod
    def shifted_power(cls, c, alpha, t0):
        return cls("shifted_power", (c, alpha, t0))

    @classmethod
    def product(cls, factors):
        return cls("product", children=factors)

    @classmethod
    def piecewise(cls, pieces):
        """
        :type pieces: list[((float, float), WeightExpr)]
        """
        pieces = list(pieces)
        bounds = [pieces[0][0][0]]
        for (lo, hi), _ in pieces:
            if lo != bounds[-1]:
                raise SchemaError("piecewise pieces must tile the interval without gap or overlap", key="pieces")
            bounds.append(hi)
        return cls("piecewise", children=[expr for _, expr in pieces], bounds=bounds)

    def on(self, interval):
        """the same weight, restricted to the given interval"""
        return WeightExpr(self.form, self.params, self.children, self.bounds, domain=(interval.a, interval.b))

    def scaled(self, lam):
        if self.form in ("power", "exp_scale", "shifted_power"):
            params = (self.params[0] * lam,) + self.params[1:]
            return WeightExpr(self.form, params, domain=self.domain)
        if self.form == "product":
            children = (self.children[0].scaled(lam),) + self.children[1:]
            return WeightExpr("product", children=children, domain=self.domain)
        children = [child.scaled(lam) for child in self.children]
        return WeightExpr("piecewise", children=children, bounds=self.bounds, domain=self.domain)

    @property
    def support(self):
        if self.domain is not None:
            return self.domain
        if self.form == "piecewise":
            return self.bounds[0], self.bounds[-1]
        lo, hi = -math.inf, math.inf
        for child in self.children:
            child_lo, child_hi = child.support
            lo, hi = max(lo, child_lo), min(hi, child_hi)
        return lo, hi

    @property
    def breakpoints(self):
        points = set()
        if self.form == "piecewise":
            points.update(self.bounds[1:-1])
        if self.form == "shifted_power":
            points.add(self.params[2])
        for child in self.children:
            points.update(child.breakpoints)
        return tuple(sorted(points))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            if self.form == "power":
                c, alpha = self.params
                return c * np.power(t, alpha) if alpha != 0 else np.full_like(t, c)
            if self.form == "exp_scale":
                c, lam = self.params
                return c * np.exp(lam * t)
            if self.form == "shifted_power":
                c, alpha, t0 = self.params
                return c * np.power(np.abs(t - t0), alpha) if alpha != 0 else np.full_like(t, c)
            if self.form == "product":
                out = np.ones_like(t)
                for child in self.children:
                    out = out * child(t)
                return out
            index = np.clip(np.searchsorted(self.bounds, t, side="right") - 1, 0, len(self.children) - 1)
            out = np.empty_like(t)
            for i, child in enumerate(self.children):
                mask = index == i
                if np.any(mask):
                    out[mask] = child(t[mask])
            return out

    def to_dict(self):
        if self.form == "power":
            return {"form": "power", "c": self.params[0], "alpha": self.params[1]}
        if self.form == "exp_scale":
            return {"form": "exp_scale", "c": self.params[0], "lambda": self.params[1]}
        if self.form == "shifted_power":
            return {"form": "shifted_power", "c": self.params[0], "alpha": self.params[1], "t0": self.params[2]}
        if self.form == "product":
            return {"form": "product", "factors": [child.to_dict() for child in self.children]}
        return {
            "form": "piecewise",
            "pieces": [
                {"lo": lo, "hi": hi, "weight": child.to_dict()}
                for lo, hi, child in zip(self.bounds[:-1], self.bounds[1:], self.children)
            ],
        }

    @classmethod
    def from_dict(cls, obj, path="weight"):
        if not isinstance(obj, dict) or "form" not in obj:
            raise SchemaError("{} must be an object with a 'form' key".format(path), key=path)
        keys = {
            "power": ("c", "alpha"),
            "exp_scale": ("c", "lambda"),
            "shifted_power": ("c", "alpha", "t0"),
            "product": ("factors",),
            "piecewise": ("pieces",),
        }
        form = obj["form"]
        if form not in keys:
            raise SchemaError("unknown weight form '{}' at {}".format(form, path), key=path + ".form")
        expected = set(keys[form]) | {"form"}
        for key in obj:
            if key not in expected:
                raise SchemaError("unknown key '{}' at {}".format(key, path), key="{}.{}".format(path, key))
        for key in keys[form]:
            if key not in obj:
                raise SchemaError("missing key '{}' at {}".format(key, path), key="{}.{}".format(path, key))
        if form == "product":
            factors = obj["factors"]
            return cls.product([cls.from_dict(x, "{}.factors[{}]".format(path, i)) for i, x in enumerate(factors)])
        if form == "piecewise":
            pieces = []
            for i, piece in enumerate(obj["pieces"]):
                where = "{}.pieces[{}]".format(path, i)
                if not isinstance(piece, dict) or set(piece) != {"lo", "hi", "weight"}:
                    raise SchemaError("{} needs exactly the keys lo, hi, weight".format(where), key=where)
                bounds = (_number(piece["lo"], where), _number(piece["hi"], where))
                pieces.append((bounds, cls.from_dict(piece["weight"], where)))
            return cls.piecewise(pieces)
        return cls(form, [_number(obj[key], "{}.{}".format(path, key)) for key in keys[form]])

    def __eq__(self, other):
        return isinstance(other, WeightExpr) and self.to_dict() == other.to_dict() and self.domain == other.domain

    def __hash__(self):
        return hash((self.form, self.params, self.children, self.bounds, self.domain))

    def __repr__(self):
        return "WeightExpr({!r})".format(self.to_dict())


def _number(value, where):
    if isinstance(value, str) and value in ("inf", "-inf"):
        return float(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("{} must be a number, got {!r}".format(where, value), key=where)
    return float(value)


@dataclass(frozen=True)
class ProblemSpec(object):
    interval: IntervalSpec
    exponents: ExponentSet
    u: WeightExpr
    v: WeightExpr
    w: WeightExpr
    settings: QuadSettings = field(default_factory=QuadSettings)
    k_max: int = 60
    cell_points: int = 512

    def __post_init__(self):
        for name in ("u", "v", "w"):
            expr = getattr(self, name)
            if expr.domain is None:
                object.__setattr__(self, name, expr.on(self.interval))
        if self.k_max < 1:
            raise RangeError("k_max must be positive, got {}".format(self.k_max))
        if self.cell_points < 2:
            raise RangeError("cell_points must be at least 2, got {}".format(self.cell_points))

    @property
    def p(self):
        return self.exponents.p

    @property
    def q(self):
        return self.exponents.q

    @property
    def r(self):
        return self.exponents.r

    @property
    def beta(self):
        return self.exponents.beta

    def with_beta(self, beta):
        return replace(self, exponents=replace(self.exponents, beta=beta))

    def with_weights(self, **weights):
        weights = {name: expr.on(self.interval) for name, expr in weights.items()}
        return replace(self, **weights)


def eval_weight(expr, t):
    """
    pointwise value of a weight strictly inside its interval

    :type expr: WeightExpr
    :type t: float
    :rtype: float
    """
    lo, hi = expr.support
    if not (lo < t < hi):
        raise OutOfDomain("t={} is outside the weight interval ({}, {})".format(t, lo, hi))
    value = float(expr(np.array([t]))[0])
    if not (value > 0) or not math.isfinite(value):
        raise NonPositive("weight evaluates to {} at t={}".format(value, t))
    return value


def _gauss(func, lo, hi):
    half = (hi - lo) / 2.0
    center = (hi + lo) / 2.0
    points = center[:, None] + half[:, None] * _NODES[None, :]
    with np.errstate(all="ignore"):
        values = np.asarray(func(points), dtype=float)
        return half * (values @ _WEIGHTS)


def _mapped(func, x, y):
    """integrand and finite limits after the substitution t = a + s/(1-s) for infinite endpoints"""
    if math.isfinite(x) and math.isfinite(y):
        return [(func, x, y)]
    if math.isfinite(x):

        def right(s):
            return func(x + s / (1.0 - s)) / (1.0 - s) ** 2

        return [(right, 0.0, 1.0)]
    if math.isfinite(y):

        def left(s):
            return func(y - s / (1.0 - s)) / (1.0 - s) ** 2

        return [(left, 0.0, 1.0)]
    return _mapped(func, -math.inf, 0.0) + _mapped(func, 0.0, math.inf)


class _Cell(object):
    __slots__ = ("lo", "hi", "left", "right", "estimate", "error", "depth")

    def __init__(self, lo, hi, left, right, coarse, depth):
        self.lo, self.hi = lo, hi
        self.left, self.right = left, right
        self.estimate = left + right
        self.error = _SAFETY * abs(self.estimate - coarse) if math.isfinite(self.estimate) else math.inf
        self.depth = depth


def _panels(func, lo, hi, count):
    """composite gauss rule with ``count`` equal panels on every [lo[i], hi[i]]"""
    width = (hi - lo) / count
    starts = lo[:, None] + width[:, None] * np.arange(count)[None, :]
    values = _gauss(func, starts.ravel(), (starts + width[:, None]).ravel())
    return values.reshape(len(lo), count).sum(axis=1)


def _shell_sum(func, cell):
    """
    integral of a deep cell from its dyadic shells toward the end where the integrand is larger: shells
    whose masses decay geometrically with ratio rho < 1 are summed and the rest
    extrapolated, rho >= 1 means the integral grows without bound

    :rtype: (float, float) or None when the shells do not decay geometrically
    """
    width = cell.hi - cell.lo
    gap = width * 2.0 ** -_SHELLS
    with np.errstate(all="ignore"):
        near_lo, near_hi = np.asarray(func(np.array([cell.lo + gap, cell.hi - gap])), dtype=float)
    end, sign = (cell.lo, 1.0) if not near_hi > near_lo else (cell.hi, -1.0)
    if np.finfo(float).eps * max(abs(end), width) > _SHELL_ROUNDING * gap:
        return None
    far = width * np.power(2.0, -np.arange(_SHELLS))
    near = far / 2.0
    lo, hi = (end + near, end + far) if sign > 0 else (end - far, end - near)
    coarse = _panels(func, lo, hi, 2)
    shells = _panels(func, lo, hi, 4)
    if not np.all(np.isfinite(shells)):
        raise Divergent("integrand is not finite near {}".format(end))
    if not np.all(shells > 0):
        return None
    ratios = shells[1:] / shells[:-1]
    rho, previous = float(ratios[-1]), float(ratios[-2])
    if np.max(np.abs(ratios[_SHELLS // 2:] - rho)) > _SHELL_SPREAD * rho:
        return None
    if min(rho, previous) >= 1.0 - 1e-9:
        raise Divergent("integral grows without bound near {} under refinement".format(end))
    if max(rho, previous) >= 1.0:
        return None
    last = float(shells[-1])
    tail = last * rho / (1.0 - rho)
    error = abs(tail - last * previous / (1.0 - previous)) + math.fsum(np.abs(shells - coarse))
    return math.fsum(shells) + tail, error


def _adaptive(func, lo, hi, breakpoints, settings):
    edges = np.linspace(lo, hi, _INITIAL_CELLS + 1)
    inner = [t for t in breakpoints if lo < t < hi]
    if inner:
        edges = np.unique(np.concatenate([edges, inner]))
    a, b = edges[:-1], edges[1:]
    mid = (a + b) / 2.0
    values = _gauss(func, np.concatenate([a, a, mid]), np.concatenate([b, mid, b]))
    n = len(a)
    heap = []
    for i in range(n):
        cell = _Cell(a[i], b[i], values[n + i], values[2 * n + i], values[i], 0)
        heapq.heappush(heap, (-cell.error, i, cell))
    order = n
    splits = 0
    shelled = set()
    while True:
        total = math.fsum(item[2].estimate for item in heap)
        error = math.fsum(item[2].error for item in heap)
        if not math.isfinite(total):
            raise Divergent("integrand is not finite on ({}, {})".format(lo, hi))
        if error <= max(settings.abs_tol, settings.rel_tol * abs(total)):
            return total, error
        _, _, worst = heapq.heappop(heap)
        if worst.depth >= _SHELL_DEPTH and (worst.lo, worst.hi) not in shelled:
            shelled.add((worst.lo, worst.hi))
            summed = _shell_sum(func, worst)
            if summed is not None and summed[1] < worst.error:
                worst.estimate, worst.error = summed
                heapq.heappush(heap, (-worst.error, order, worst))
                order += 1
                continue
        if worst.depth >= settings.max_depth or splits >= _MAX_SPLITS:
            raise DepthExceeded(
                "quadrature did not reach tolerance on ({}, {}) after {} splits".format(lo, hi, splits)
            )
        m = (worst.lo + worst.hi) / 2.0
        q1, q3 = (worst.lo + m) / 2.0, (m + worst.hi) / 2.0
        parts = _gauss(func, np.array([worst.lo, q1, m, q3]), np.array([q1, m, q3, worst.hi]))
        for child in (
            _Cell(worst.lo, m, parts[0], parts[1], worst.left, worst.depth + 1),
            _Cell(m, worst.hi, parts[2], parts[3], worst.right, worst.depth + 1),
        ):
            heapq.heappush(heap, (-child.error, order, child))
            order += 1
        splits += 1


def integrate_with_error(func, x, y, settings=None, breakpoints=None):
    """
    adaptive gauss-legendre quadrature of a nonnegative integrand on [x, y],
    either endpoint may be infinite

    :type func: callable
    :type x: float
    :type y: float
    :type settings: QuadSettings
    :rtype: (float, float)
    """
    settings = settings or DEFAULT_SETTINGS
    if not x <= y:
        raise OutOfDomain("integration limits must satisfy x <= y, got ({}, {})".format(x, y))
    if x == y:
        return 0.0, 0.0
    if breakpoints is None:
        breakpoints = getattr(func, "breakpoints", ())
    value, error = 0.0, 0.0
    for mapped, lo, hi in _mapped(func, x, y):
        points = breakpoints if mapped is func else ()
        part, part_error = _adaptive(mapped, lo, hi, points, settings)
        value += part
        error += part_error
    logger.debug("integrate(%s, %s) = %s +- %s", x, y, value, error)
    return value, error


def integrate(func, x, y, settings=None, breakpoints=None):
    """
    :rtype: float
    """
    return integrate_with_error(func, x, y, settings, breakpoints)[0]


def tail_W(w, x, settings=None, b=None):
    """
    W(x), the integral of w from x to the right end of its interval

    :type w: WeightExpr
    :type x: float
    :rtype: float
    """
    if b is None:
        b = w.support[1]
    try:
        value = integrate(w, x, b, settings)
    except Divergent:
        raise Divergent("W({}) is infinite: the tail integral of w diverges".format(x))
    if not value > 0:
        raise DegenerateW("W({}) = {} vanishes".format(x, value))
    return value


def V_p(v, p, x, y, settings=None):
    """
    dual weight functional, +inf when the defining integral or supremum diverges

    :type v: WeightExpr
    :type p: float
    :rtype: float
    """
    if p < 1:
        raise RangeError("V_p needs p >= 1, got {}".format(p))
    if x == y:
        return 0.0
    if p == 1:
        return ess_sup(lambda t: 1.0 / v(t), x, y, settings)
    exponent = -1.0 / (p - 1.0)
    try:
        value = integrate(lambda t: np.power(v(t), exponent), x, y, settings, getattr(v, "breakpoints", ()))
    except Divergent:
        return math.inf
    return value ** ((p - 1.0) / p)


def _open_map(x, y):
    if math.isfinite(x) and math.isfinite(y):
        return (lambda s: s), x, y
    if math.isfinite(x):
        return (lambda s: x + s / (1.0 - s)), 0.0, 1.0
    if math.isfinite(y):
        return (lambda s: y - (1.0 - s) / s), 0.0, 1.0
    return (lambda s: (2.0 * s - 1.0) / (s * (1.0 - s))), 0.0, 1.0


def _sample(func, points):
    with np.errstate(all="ignore"):
        values = np.asarray(func(points), dtype=float)
    return np.where(np.isnan(values), -math.inf, values)


def ess_sup(func, x, y, settings=None):
    """
    essential supremum of a piecewise-continuous function on (x, y): a dyadic grid
    of cell midpoints, then zooming on the best point until the value settles

    :rtype: float
    """
    settings = settings or DEFAULT_SETTINGS
    if not x < y:
        raise OutOfDomain("ess_sup needs x < y, got ({}, {})".format(x, y))
    to_t, lo, hi = _open_map(x, y)
    n, best, center = 16, None, None
    while True:
        s = lo + (hi - lo) * (np.arange(n) + 0.5) / n
        values = _sample(func, to_t(s))
        i = int(np.argmax(values))
        value = float(values[i])
        if value == math.inf:
            return math.inf
        settled = best is not None and abs(value - best) <= _SUP_REL_CHANGE * abs(value)
        best, center = value, float(s[i])
        if settled or n >= settings.sup_grid:
            break
        n *= 2
    width = (hi - lo) / n
    growth = 0.0
    for _ in range(settings.max_depth):
        left, right = max(lo, center - width), min(hi, center + width)
        s = left + (right - left) * (np.arange(_SUP_ZOOM_POINTS) + 0.5) / _SUP_ZOOM_POINTS
        values = _sample(func, to_t(s))
        i = int(np.argmax(values))
        value = float(values[i])
        if value == math.inf:
            return math.inf
        width = (right - left) / _SUP_ZOOM_POINTS
        if value <= best:
            if abs(best) == 0 or (best - value) <= _SUP_REL_CHANGE * abs(best) or width < 1e-15 * (hi - lo):
                return best
            continue
        growth = (value - best) / abs(best) if best else math.inf
        best, center = value, float(s[i])
        if growth <= _SUP_REL_CHANGE:
            return best
    if growth > 1e-3 and (center - lo < 1e-9 * (hi - lo) or hi - center < 1e-9 * (hi - lo)):
        return math.inf
    raise DepthExceeded("ess_sup on ({}, {}) did not stabilize".format(x, y))


def cell_integrals(func, nodes, settings=None, breakpoints=()):
    """
    integral of func over every cell [nodes[j], nodes[j+1]]; one vectorized pass,
    cells missing the tolerance are redone adaptively, divergent cells give +inf

    :type nodes: numpy.ndarray
    :rtype: numpy.ndarray
    """
    settings = settings or DEFAULT_SETTINGS
    lo, hi = nodes[:-1], nodes[1:]
    mid = (lo + hi) / 2.0
    coarse = _gauss(func, lo, hi)
    fine = _gauss(func, lo, mid) + _gauss(func, mid, hi)
    with np.errstate(invalid="ignore"):
        bad = ~(np.abs(fine - coarse) <= settings.rel_tol * np.abs(fine) + settings.abs_tol * (hi - lo))
    if breakpoints:
        inside = np.zeros_like(bad)
        for t in breakpoints:
            inside |= (lo < t) & (t < hi)
        bad |= inside
    for j in np.flatnonzero(bad):
        try:
            fine[j] = integrate(func, lo[j], hi[j], settings, breakpoints)
        except Divergent:
            fine[j] = math.inf
    return fine


def cell_sups(func, nodes, settings=None):
    """per-cell supremum: gauss points and interior cell ends, exact ess_sup on the outer two cells"""
    lo, hi = nodes[:-1], nodes[1:]
    half = (hi - lo) / 2.0
    points = ((hi + lo) / 2.0)[:, None] + half[:, None] * _NODES[None, :]
    sups = _sample(func, points).max(axis=1)
    ends = _sample(func, nodes)
    sups[1:] = np.maximum(sups[1:], ends[1:-1])
    sups[:-1] = np.maximum(sups[:-1], ends[1:-1])
    sups[0] = ess_sup(func, lo[0], hi[0], settings)
    sups[-1] = ess_sup(func, lo[-1], hi[-1], settings)
    return sups


class DualTable(object):
    """
    V_p tabulated on a grid, V_p(t_i, t_j) for i <= j from per-cell pieces;
    ``prefix`` carries the part of V_p(a, t_0) left of the grid
    """

    def __init__(self, v, p, nodes, settings=None, prefix=0.0):
        self.p = p
        self.nodes = nodes
        if p == 1:
            self.cells = cell_sups(lambda t: 1.0 / v(t), nodes, settings)
        else:
            exponent = -1.0 / (p - 1.0)
            self.cells = cell_integrals(lambda t: np.power(v(t), exponent), nodes, settings, v.breakpoints)
        self.prefix = prefix

    def _finish(self, accumulated):
        if self.p == 1:
            return accumulated
        with np.errstate(invalid="ignore"):
            return np.power(accumulated, (self.p - 1.0) / self.p)

    def from_start(self):
        """V_p(a, t_i) at every node"""
        if self.p == 1:
            raw = np.maximum.accumulate(np.concatenate([[self.prefix], self.cells]))
        else:
            raw = np.concatenate([[self.prefix], self.prefix + np.cumsum(self.cells)])
        return self._finish(raw)

    def within(self, start, stop):
        """V_p(t_start, t_j) for start <= j <= stop"""
        pieces = self.cells[start:stop]
        if self.p == 1:
            raw = np.concatenate([[0.0], np.maximum.accumulate(pieces)]) if len(pieces) else np.zeros(1)
        else:
            raw = np.concatenate([[0.0], np.cumsum(pieces)])
        return self._finish(raw)


def prefix_dual(v, p, a, start, settings=None):
    """the raw V_p accumulation on (a, start): an integral for p > 1, a supremum for p = 1"""
    if not a < start:
        return 0.0
    if p == 1:
        return ess_sup(lambda t: 1.0 / v(t), a, start, settings)
    try:
        return integrate(lambda t: np.power(v(t), -1.0 / (p - 1.0)), a, start, settings, v.breakpoints)
    except Divergent:
        return math.inf


class WeightTables(object):
    """
    W at grid nodes and cell midpoints, and cell integrals of u, shared by every
    constant evaluated on the same grid

    :type nodes: numpy.ndarray
    :type w_end: float W at the last node
    """

    def __init__(self, spec, nodes, w_end):
        settings = spec.settings
        self.spec = spec
        self.nodes = nodes
        half = np.empty(2 * len(nodes) - 1)
        half[0::2] = nodes
        half[1::2] = (nodes[:-1] + nodes[1:]) / 2.0
        pieces = cell_integrals(spec.w, half, settings, spec.w.breakpoints)
        if not np.all(np.isfinite(pieces)):
            raise DegenerateW("W is infinite inside the interval")
        tail = np.concatenate([np.cumsum(pieces[::-1])[::-1], [0.0]]) + w_end
        self.W = tail[0::2]
        self.W_mid = tail[1::2]
        if not np.all(self.W[:-1] > 0):
            raise DegenerateW("W vanishes inside the interval")
        self.u_cells = cell_integrals(spec.u, nodes, settings, spec.u.breakpoints)

    def w_measure(self, gamma):
        """integral of W^gamma w over each cell, exact since dW = -w dt; needs gamma > -1"""
        power = gamma + 1.0
        with np.errstate(divide="ignore"):
            return (np.power(self.W[:-1], power) - np.power(self.W[1:], power)) / power

    def u_measure(self, theta):
        """integral of W^theta u over each cell, W frozen at the cell midpoint"""
        if theta == 0:
            return self.u_cells.copy()
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.power(self.W_mid, theta) * self.u_cells
        return np.where(self.u_cells == 0, 0.0, out)

    def dual(self, p=None, v=None):
        spec = self.spec
        p = spec.p if p is None else p
        v = spec.v if v is None else v
        prefix = prefix_dual(v, p, spec.interval.a, float(self.nodes[0]), spec.settings)
        return DualTable(v, p, self.nodes, spec.settings, prefix)

    def tail_v(self):
        """the tail integral of v at every node, +inf where it diverges"""
        spec = self.spec
        cells = cell_integrals(spec.v, self.nodes, spec.settings, spec.v.breakpoints)
        try:
            end = integrate(spec.v, float(self.nodes[-1]), spec.interval.b, spec.settings)
        except Divergent:
            end = math.inf
        return np.concatenate([np.cumsum(cells[::-1])[::-1], [0.0]]) + end


def positive_part(values):
    return np.clip(values, 0.0, None)


def safe_power(base, exponent):
    """base**exponent on nonnegative arrays with 0**e = 0 for e > 0 and 0*inf conventions left to callers"""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = np.power(base, exponent)
    if exponent > 0:
        out = np.where(base == 0, 0.0, out)
    return out


def safe_product(*factors):
    """elementwise product with the convention 0 * inf = 0"""
    out = None
    zero = None
    for factor in factors:
        factor = np.asarray(factor, dtype=float)
        out = factor if out is None else out * factor
        zero = (factor == 0) if zero is None else (zero | (factor == 0))
    with np.errstate(invalid="ignore"):
        return np.where(zero, 0.0, out)


__all__ = [
    "QuadSettings",
    "IntervalSpec",
    "ExponentSet",
    "WeightExpr",
    "ProblemSpec",
    "eval_weight",
    "integrate",
    "integrate_with_error",
    "tail_W",
    "V_p",
    "ess_sup",
    "cell_integrals",
    "cell_sups",
    "DualTable",
    "WeightTables",
]
