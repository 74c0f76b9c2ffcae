# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals


class HardyCertifyError(ValueError):
    """base class of every error raised by hardy_certify"""


class NumericalError(HardyCertifyError):
    exit_code = 5


class ConfigError(HardyCertifyError):
    exit_code = 4


class OutOfDomain(NumericalError):
    pass


class NonPositive(NumericalError):
    pass


class Divergent(NumericalError):
    pass


class DepthExceeded(NumericalError):
    pass


class BisectionFailure(NumericalError):
    pass


class IndexMismatch(NumericalError):
    pass


class EmptyRange(NumericalError):
    pass


class ZeroFunction(NumericalError):
    pass


class InconsistentParametrizations(NumericalError):
    pass


class DegenerateError(NumericalError):
    """hypothesis violations, reported as a DEGENERATE verdict rather than a failure"""


class DegenerateW(DegenerateError):
    pass


class TrivialRegime(DegenerateError):
    pass


class TailDivergent(DegenerateError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "{} (line {}, column {})".format(message, line, column)
        super(ParseError, self).__init__(message)
        self.line = line
        self.column = column


class SchemaError(ConfigError):
    def __init__(self, message, key=None):
        super(SchemaError, self).__init__(message)
        self.key = key


class RangeError(ConfigError):
    pass


class IoError(ConfigError):
    pass


__all__ = [
    "HardyCertifyError",
    "NumericalError",
    "ConfigError",
    "DegenerateError",
    "OutOfDomain",
    "NonPositive",
    "Divergent",
    "DepthExceeded",
    "DegenerateW",
    "BisectionFailure",
    "IndexMismatch",
    "EmptyRange",
    "TrivialRegime",
    "TailDivergent",
    "ZeroFunction",
    "InconsistentParametrizations",
    "ParseError",
    "SchemaError",
    "RangeError",
    "IoError",
]
