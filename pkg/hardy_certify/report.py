# -*- coding: utf-8 -*-
"""
Configuration ingestion, orchestration of one certification run and canonical
report emission.
"""
from __future__ import absolute_import, unicode_literals

import json
import logging
import math
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from hardy_certify import __version__
from hardy_certify.constants import DEFAULT_BAND, DEFAULT_CELL_POINTS, DEFAULT_K_MAX, SCHEMA_VERSION, Mode, Verdict
from hardy_certify.constants_continuous import ConstantReport, characterize_main, characterize_monotone
from hardy_certify.constants_discrete import (
    SeqWeights,
    discrete_characterization,
    discrete_hardy_constant,
    embedding_constant,
)
from hardy_certify.discretize import (
    GeometricSeq,
    build_discretizing_sequence,
    check_dyadic_summation,
    check_geometric_equivalences,
    check_interval_equivalences,
)
from hardy_certify.errors import (
    ConfigError,
    DegenerateError,
    EmptyRange,
    IndexMismatch,
    IoError,
    ParseError,
    RangeError,
    SchemaError,
)
from hardy_certify.measure_core import (
    ExponentSet,
    IntervalSpec,
    ProblemSpec,
    QuadSettings,
    WeightExpr,
    cell_integrals,
)
from hardy_certify.oracle import (
    maximize_discrete_embedding,
    maximize_discrete_hardy,
    maximize_ratio_main,
    maximize_ratio_monotone,
    worker_count,
)

logger = logging.getLogger(__name__)

FORMATS = ("json", "markdown")
_FLOAT_TAG = "\u0001float:"
_FLOAT_TOKEN = re.compile(r"\"\\u0001float:(-?[0-9]\.[0-9]{12}e[-+][0-9]+)\"")
_TOP_KEYS = (
    "schema",
    "name",
    "mode",
    "interval",
    "exponents",
    "weights",
    "sequences",
    "oracle",
    "band",
    "settings",
    "k_max",
    "cell_points",
    "output",
)
_CONTINUOUS_MODES = (Mode.main, Mode.monotone, Mode.lemma_checks)
_SEQUENCE_MODES = (Mode.discrete_embedding, Mode.discrete_hardy)


@dataclass(frozen=True)
class OracleSettings(object):
    n_cells: int = 4096
    restarts: int = 32
    seed: int = 42

    def __post_init__(self):
        if self.n_cells < 64:
            raise RangeError("oracle.n_cells must be at least 64, got {}".format(self.n_cells))
        if self.restarts < 1:
            raise RangeError("oracle.restarts must be positive, got {}".format(self.restarts))

    def to_dict(self):
        return {"n_cells": self.n_cells, "restarts": self.restarts, "seed": self.seed}


@dataclass(frozen=True)
class RunConfig(object):
    mode: Mode
    name: Optional[str] = None
    problem: Optional[ProblemSpec] = None
    sequences: Optional[SeqWeights] = None
    exponents: Tuple[float, float] = (1.0, 1.0)
    oracle: OracleSettings = field(default_factory=OracleSettings)
    beta_list: Tuple[float, ...] = (0.0,)
    band: Tuple[float, float] = DEFAULT_BAND
    output: Optional[str] = None
    format: str = "json"
    source: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.mode in _CONTINUOUS_MODES and self.problem is None:
            raise SchemaError("mode '{}' needs interval, exponents and weights".format(self.mode.value), key="weights")
        if self.mode in _SEQUENCE_MODES and self.sequences is None:
            raise SchemaError("mode '{}' needs sequences".format(self.mode.value), key="sequences")
        for beta in self.beta_list:
            if not beta < 1:
                raise RangeError("beta must be < 1, got {}".format(beta))
        lo, hi = self.band
        if not 0 < lo <= 1 <= hi:
            raise RangeError("band must satisfy 0 < lo <= 1 <= hi, got [{}, {}]".format(lo, hi))
        if self.format not in FORMATS:
            raise RangeError("format must be one of {}, got '{}'".format(", ".join(FORMATS), self.format))

    def override(self, mode=None, beta_list=None, n_cells=None, restarts=None, seed=None, output=None, format=None):
        """copy with command-line values taking precedence over the file"""
        changes = {}
        if mode is not None:
            changes["mode"] = Mode(mode)
        if beta_list is not None:
            changes["beta_list"] = tuple(beta_list)
        given = (("n_cells", n_cells), ("restarts", restarts), ("seed", seed))
        oracle = {key: value for key, value in given if value is not None}
        if oracle:
            changes["oracle"] = replace(self.oracle, **oracle)
        if output is not None:
            changes["output"] = output
        if format is not None:
            changes["format"] = format
        return replace(self, **changes)

    def to_dict(self):
        data = {
            "schema": SCHEMA_VERSION,
            "mode": self.mode.value,
            "name": self.name,
            "oracle": self.oracle.to_dict(),
            "beta": list(self.beta_list),
            "band": list(self.band),
        }
        if self.problem is not None:
            spec = self.problem
            data["interval"] = {"a": spec.interval.a, "b": spec.interval.b}
            data["exponents"] = {"p": spec.p, "q": spec.q, "r": spec.r}
            data["weights"] = {name: getattr(spec, name).to_dict() for name in ("u", "v", "w")}
            data["k_max"] = spec.k_max
            data["cell_points"] = spec.cell_points
        if self.sequences is not None:
            data["sequences"] = {"N": self.sequences.N, "v": list(self.sequences.v), "w": list(self.sequences.w)}
            data["exponents"] = {"p": self.exponents[0], "q": self.exponents[1]}
        return data


def _require(obj, key, where):
    if key not in obj:
        raise SchemaError("missing key '{}' in {}".format(key, where), key=key)
    return obj[key]


def _only(obj, keys, where):
    if not isinstance(obj, dict):
        raise SchemaError("{} must be an object".format(where), key=where)
    for key in obj:
        if key not in keys:
            raise SchemaError("unknown key '{}' in {}".format(key, where), key=key)


def _real(value, key):
    if isinstance(value, str) and value in ("inf", "-inf"):
        return float(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError("{} must be a number, got {!r}".format(key, value), key=key)
    return float(value)


def _integer(value, key):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError("{} must be an integer, got {!r}".format(key, value), key=key)
    return value


def _interval(obj):
    _only(obj, ("a", "b"), "interval")
    a = _real(_require(obj, "a", "interval"), "interval.a")
    b = _real(_require(obj, "b", "interval"), "interval.b")
    return IntervalSpec(a, b)


def _exponents(obj, need_r):
    _only(obj, ("p", "q", "r", "beta"), "exponents")
    p = _real(_require(obj, "p", "exponents"), "exponents.p")
    q = _real(_require(obj, "q", "exponents"), "exponents.q")
    r = _real(obj["r"], "exponents.r") if "r" in obj else None
    if need_r and r is None:
        raise SchemaError("missing key 'r' in exponents", key="r")
    beta = obj.get("beta", [0.0])
    if not isinstance(beta, list) or not beta:
        raise SchemaError("exponents.beta must be a non-empty list", key="beta")
    return p, q, r, tuple(_real(x, "exponents.beta") for x in beta)


def _settings(obj):
    _only(obj, ("rel_tol", "abs_tol", "max_depth", "sup_grid"), "settings")
    values = {}
    for key in ("rel_tol", "abs_tol"):
        if key in obj:
            values[key] = _real(obj[key], "settings." + key)
    for key in ("max_depth", "sup_grid"):
        if key in obj:
            values[key] = _integer(obj[key], "settings." + key)
    return QuadSettings(**values)


def _oracle(obj):
    _only(obj, ("n_cells", "restarts", "seed"), "oracle")
    return OracleSettings(**{key: _integer(value, "oracle." + key) for key, value in obj.items()})


def _sequences(obj):
    _only(obj, ("N", "v", "w"), "sequences")
    first, second = _require(obj, "v", "sequences"), _require(obj, "w", "sequences")
    for key, values in (("v", first), ("w", second)):
        if not isinstance(values, list):
            raise SchemaError("sequences.{} must be a list".format(key), key=key)
    try:
        return SeqWeights.of(
            [_real(x, "sequences.v") for x in first],
            [_real(x, "sequences.w") for x in second],
            _integer(obj.get("N", 0), "sequences.N"),
        )
    except (EmptyRange, IndexMismatch) as error:
        raise SchemaError(str(error), key="sequences")


def config_from_dict(obj):
    """
    validated RunConfig from a decoded config document; unknown keys are rejected

    :type obj: dict
    :rtype: RunConfig
    """
    _only(obj, _TOP_KEYS, "config")
    schema = _require(obj, "schema", "config")
    if schema != SCHEMA_VERSION:
        raise SchemaError("unsupported schema {!r}, expected {}".format(schema, SCHEMA_VERSION), key="schema")
    try:
        mode = Mode(obj.get("mode", Mode.main.value))
    except ValueError:
        raise SchemaError("unknown mode {!r}".format(obj.get("mode")), key="mode")
    p, q, r, beta_list = _exponents(_require(obj, "exponents", "config"), need_r=mode in (Mode.main, Mode.lemma_checks))
    kwargs = {"mode": mode, "beta_list": beta_list, "exponents": (p, q), "source": obj}
    if "name" in obj:
        if not isinstance(obj["name"], str):
            raise SchemaError("name must be a string", key="name")
        kwargs["name"] = obj["name"]
    if "oracle" in obj:
        kwargs["oracle"] = _oracle(obj["oracle"])
    if "band" in obj:
        band = obj["band"]
        if not isinstance(band, list) or len(band) != 2:
            raise SchemaError("band must be a list [lo, hi]", key="band")
        kwargs["band"] = (_real(band[0], "band[0]"), _real(band[1], "band[1]"))
    if "output" in obj:
        _only(obj["output"], ("path", "format"), "output")
        kwargs["output"] = obj["output"].get("path")
        kwargs["format"] = obj["output"].get("format", "json")
    if "weights" in obj or mode in _CONTINUOUS_MODES:
        weights = _require(obj, "weights", "config")
        _only(weights, ("u", "v", "w"), "weights")
        kwargs["problem"] = ProblemSpec(
            interval=_interval(_require(obj, "interval", "config")),
            exponents=ExponentSet(p, q, 1.0 if r is None else r),
            u=WeightExpr.from_dict(_require(weights, "u", "weights"), "weights.u"),
            v=WeightExpr.from_dict(_require(weights, "v", "weights"), "weights.v"),
            w=WeightExpr.from_dict(_require(weights, "w", "weights"), "weights.w"),
            settings=_settings(obj.get("settings", {})),
            k_max=_integer(obj.get("k_max", DEFAULT_K_MAX), "k_max"),
            cell_points=_integer(obj.get("cell_points", DEFAULT_CELL_POINTS), "cell_points"),
        )
    elif not 0 < p < math.inf or not 0 < q < math.inf:
        raise RangeError("p and q must be positive and finite, got p={} q={}".format(p, q))
    if "sequences" in obj:
        kwargs["sequences"] = _sequences(obj["sequences"])
    return RunConfig(**kwargs)


def parse_config(path):
    """
    :type path: str
    :rtype: RunConfig
    """
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except (IOError, OSError) as error:
        raise IoError("cannot read config {}: {}".format(path, error))
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as error:
        raise ParseError("config is not valid UTF-8: {}".format(error))
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(error.msg, error.lineno, error.colno)
    if not isinstance(obj, dict):
        raise SchemaError("config must be a JSON object", key="config")
    return config_from_dict(obj)


@dataclass
class Sandwich(object):
    """constant against oracle in both directions"""

    name: str
    constant: float
    estimate: float
    beta: Optional[float] = None

    @property
    def constant_over_oracle(self):
        return _quotient(self.constant, self.estimate)

    @property
    def oracle_over_constant(self):
        return _quotient(self.estimate, self.constant)

    def within(self, band):
        lo, hi = band
        return all(lo <= x <= hi for x in (self.constant_over_oracle, self.oracle_over_constant))

    def to_dict(self, band):
        return {
            "name": self.name,
            "beta": self.beta,
            "constant": self.constant,
            "oracle": self.estimate,
            "constant/oracle": self.constant_over_oracle,
            "oracle/constant": self.oracle_over_constant,
            "within_band": self.within(band),
        }


def _quotient(x, y):
    if x == y:
        return 1.0
    if y == 0:
        return math.inf
    return x / y


@dataclass
class CertReport(object):
    config: RunConfig
    verdict: Verdict
    regime: Optional[str] = None
    constants: List[ConstantReport] = field(default_factory=list)
    discrete: List[dict] = field(default_factory=list)
    oracle: object = None
    sandwiches: List[Sandwich] = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    truncation: List[str] = field(default_factory=list)
    degenerate: Optional[str] = None
    timings: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        band = self.config.band
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "config": self.config.to_dict(),
            "verdict": self.verdict.value,
            "exit_code": self.verdict.exit_code,
            "regime": self.regime,
            "constants": [report.to_dict() for report in self.constants],
            "discrete": list(self.discrete),
            "oracle": None if self.oracle is None else self.oracle.to_dict(),
            "sandwich": [sandwich.to_dict(band) for sandwich in self.sandwiches],
            "checks": {
                name: {key: entry.to_dict() for key, entry in entries.items()} for name, entries in self.checks.items()
            },
            "truncation": list(self.truncation),
            "degenerate": self.degenerate,
        }


def _verdict(report):
    if report.degenerate is not None:
        return Verdict.DEGENERATE
    band = report.config.band
    if report.sandwiches and not all(math.isfinite(s.constant) and s.estimate > 0 for s in report.sandwiches):
        return Verdict.DEGENERATE
    if all(s.within(band) for s in report.sandwiches) and all(
        entry.ok for entries in report.checks.values() for entry in entries.values()
    ):
        return Verdict.CONSISTENT
    return Verdict.INCONSISTENT


def _fan_out(func, items):
    """evaluate func over items on worker threads, results kept in input order"""
    items = list(items)
    if len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(worker_count(), len(items))) as executor:
        return list(executor.map(func, items))


def _characterize(characterize, spec):
    try:
        return characterize(spec)
    except DegenerateError as error:
        report = ConstantReport(characterize.__name__.split("_")[-1], None)
        report.degenerate = str(error)
        return report


def _continuous_run(cfg, report):
    spec = cfg.problem
    monotone = cfg.mode is Mode.monotone
    characterize = characterize_monotone if monotone else characterize_main

    started = time.time()
    reports = _fan_out(lambda beta: _characterize(characterize, spec.with_beta(beta)), cfg.beta_list)
    report.constants.extend(reports)
    report.timings["constants"] = time.time() - started
    for constants in reports:
        if constants.degenerate is not None:
            report.degenerate = constants.degenerate
            return
        report.regime = constants.regime.value
        report.truncation.extend(constants.notes)

    discrete = []
    if not monotone:
        started = time.time()
        seq = build_discretizing_sequence(spec.w, spec.interval, spec.k_max, spec.settings)
        discrete = _fan_out(lambda beta: discrete_characterization(spec.with_beta(beta), seq), cfg.beta_list)
        for beta, item in zip(cfg.beta_list, discrete):
            data = item.to_dict()
            data["beta"] = beta
            report.discrete.append(data)
        report.timings["discrete"] = time.time() - started

    started = time.time()
    maximize = maximize_ratio_monotone if monotone else maximize_ratio_main
    settings = cfg.oracle
    report.oracle = maximize(spec, settings.n_cells, settings.restarts, settings.seed)
    report.timings["oracle"] = time.time() - started
    estimate = report.oracle.estimate
    if estimate <= 0:
        report.degenerate = "the oracle found no function with a positive ratio"
        return

    for beta, constants in zip(cfg.beta_list, reports):
        report.sandwiches.append(Sandwich("+".join(constants.combination), constants.characterization, estimate, beta))
    for beta, item in zip(cfg.beta_list, discrete):
        if item.degenerate is None:
            name = "discrete " + "+".join(item.combination)
            report.sandwiches.append(Sandwich(name, item.characterization, estimate, beta))


def _sequence_run(cfg, report):
    sw = cfg.sequences
    p, q = cfg.exponents
    settings = cfg.oracle
    if cfg.mode is Mode.discrete_embedding:
        constant = embedding_constant(sw, p, q)
        result = maximize_discrete_embedding(sw, p, q, settings.restarts, settings.seed)
    else:
        constant = discrete_hardy_constant(sw, p, q)
        result = maximize_discrete_hardy(sw, p, q, settings.restarts, settings.seed)
    report.regime = constant.name.value
    report.discrete.append(constant.to_dict())
    report.oracle = result
    report.sandwiches.append(Sandwich(constant.name.value, constant.value, result.estimate))
    if result.estimate <= 0:
        report.degenerate = "every sequence has zero ratio"


def _h_linear(start):
    return lambda t: np.asarray(t, dtype=float) - start + 1.0


def _lemma_run(cfg, report):
    spec = cfg.problem
    seq = build_discretizing_sequence(spec.w, spec.interval, spec.k_max, spec.settings)
    report.truncation.append("sequence truncated at K={} ({})".format(seq.K, seq.truncation))
    points = np.array([x for x in seq.points if math.isfinite(x)])
    if len(points) < 3:
        report.degenerate = "the discretizing sequence has fewer than two complete cells"
        return
    masses = cell_integrals(spec.u, points, spec.settings, spec.u.breakpoints)
    masses = np.where(np.isfinite(masses), masses, 0.0)
    cells = len(points) - 1
    for alpha in sorted({1.0, spec.r / spec.q}):
        tau = GeometricSeq.powers(0.5, 0, cells)
        suffix = "alpha={:g}".format(alpha)
        report.checks["geometric " + suffix] = check_geometric_equivalences(tau, masses, alpha)
        report.checks["interval " + suffix] = check_interval_equivalences(
            tau, seq, spec.u, alpha, settings=spec.settings
        )
        report.checks["dyadic " + suffix] = check_dyadic_summation(
            spec.w, seq, alpha, _h_linear(points[0]), spec.settings
        )


def run_certification(cfg):
    """
    every computation the mode asks for, its sandwich ratios against the oracle
    and the verdict

    :type cfg: RunConfig
    :rtype: CertReport
    """
    report = CertReport(cfg, Verdict.DEGENERATE)
    logger.info("certification run: mode %s", cfg.mode.value)
    try:
        if cfg.mode in (Mode.main, Mode.monotone):
            _continuous_run(cfg, report)
        elif cfg.mode is Mode.lemma_checks:
            _lemma_run(cfg, report)
        else:
            _sequence_run(cfg, report)
    except DegenerateError as error:
        report.degenerate = str(error)
    report.verdict = _verdict(report)
    logger.info("verdict %s, timings %s", report.verdict.value, report.timings)
    return report


def _canonical(obj):
    """floats tagged for the fixed %.12e format, non-finite ones as strings"""
    if isinstance(obj, dict):
        return {str(key): _canonical(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(value) for value in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return _FLOAT_TAG + "%.12e" % value
    return obj


def _dumps(data):
    """canonical JSON text: sorted keys, two space indent, finite floats as %.12e tokens"""
    text = json.dumps(_canonical(data), sort_keys=True, indent=2, ensure_ascii=False)
    return _FLOAT_TOKEN.sub(r"\1", text) + "\n"


def _cell(value):
    if isinstance(value, float):
        if not math.isfinite(value):
            return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
        return "%.6e" % value
    return "-" if value is None else str(value)


def _row(values):
    return "| " + " | ".join(_cell(value) for value in values) + " |"


def _markdown(report):
    data = report.to_dict()
    lines = [
        "# hardy-certify report",
        "",
        "- mode: {}".format(data["config"]["mode"]),
        "- verdict: **{}** (exit code {})".format(data["verdict"], data["exit_code"]),
        "- regime: {}".format(_cell(data["regime"])),
    ]
    if report.degenerate:
        lines.append("- degenerate: {}".format(report.degenerate))
    for constants in data["constants"]:
        lines += ["", "## {} constants".format(constants["kind"]), ""]
        lines += ["| name | value | error | finite |", "|---|---|---|---|"]
        for name in sorted(constants["constants"]):
            item = constants["constants"][name]
            lines.append(_row([item["label"], item["value"], item["error"], item["finite"]]))
    if data["discrete"]:
        lines += ["", "## discrete constants", "", "| name | value | finite |", "|---|---|---|"]
        for item in data["discrete"]:
            for name in sorted(item.get("constants", {})) or [None]:
                entry = item["constants"][name] if name else item
                lines.append(_row([entry["label"], entry["value"], entry["finite"]]))
    if report.oracle is not None:
        lines += [
            "",
            "## oracle",
            "",
            "- estimate: {}".format(_cell(report.oracle.estimate)),
            "- cells: {}, restarts: {}, seed: {}, converged: {}".format(
                report.oracle.n_cells, report.oracle.restarts, report.oracle.seed, report.oracle.converged
            ),
        ]
    if data["sandwich"]:
        lines += ["", "## sandwich", ""]
        lines += ["| combination | beta | constant/oracle | oracle/constant | in band |", "|---|---|---|---|---|"]
        for item in data["sandwich"]:
            ratios = [item["constant/oracle"], item["oracle/constant"]]
            lines.append(_row([item["name"], item["beta"]] + ratios + [item["within_band"]]))
    for name in sorted(data["checks"]):
        lines += ["", "## {}".format(name), "", "| equivalence | ratio | lower | upper | ok |", "|---|---|---|---|---|"]
        for key in sorted(data["checks"][name]):
            entry = data["checks"][name][key]
            lines.append(_row([key, entry["ratio"]] + list(entry["bounds"]) + [entry["ok"]]))
    if data["truncation"]:
        lines += ["", "## truncation", ""] + ["- {}".format(note) for note in data["truncation"]]
    return "\n".join(lines) + "\n"


def emit(report, format="json"):
    """
    :type report: CertReport
    :rtype: bytes
    """
    if format == "json":
        text = _dumps(report.to_dict())
    elif format == "markdown":
        text = _markdown(report)
    else:
        raise IoError("unknown report format '{}'".format(format))
    return text.encode("utf-8")


def worst_verdict(reports):
    verdicts = [report.verdict for report in reports]
    return max(verdicts, key=lambda verdict: verdict.exit_code, default=Verdict.CONSISTENT)


def emit_suite(reports, format="json"):
    """one document for several reports, ordered as given"""
    if format == "json":
        data = {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "verdict": worst_verdict(reports).value,
            "reports": [report.to_dict() for report in reports],
        }
        return _dumps(data).encode("utf-8")
    if format == "markdown":
        return "\n---\n\n".join(_markdown(report) for report in reports).encode("utf-8")
    raise IoError("unknown report format '{}'".format(format))


def error_report(error):
    """the structured report written when a run stops on an error"""
    kind = "config" if isinstance(error, ConfigError) else "numerical"
    data = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "verdict": None,
        "error": {"kind": kind, "type": type(error).__name__, "message": str(error)},
        "exit_code": getattr(error, "exit_code", 5),
    }
    return _dumps(data).encode("utf-8")


def write(content, path):
    try:
        with open(path, "wb") as f:
            f.write(content)
    except (IOError, OSError) as error:
        raise IoError("cannot write report {}: {}".format(path, error))


__all__ = [
    "CertReport",
    "OracleSettings",
    "RunConfig",
    "Sandwich",
    "config_from_dict",
    "emit",
    "emit_suite",
    "error_report",
    "parse_config",
    "run_certification",
    "worst_verdict",
    "write",
]
