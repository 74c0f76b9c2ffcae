# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

from enum import Enum


class ConstantName(Enum):
    def __new__(cls, key, label, family):
        obj = object.__new__(cls)
        obj._value_ = key

        obj.label = label
        obj.family = family
        return obj

    C1 = "C1", "C_1", "continuous"
    C2 = "C2", "C_2", "continuous"
    C3 = "C3", "C_3", "continuous"
    C4 = "C4", "C_4", "continuous"
    C5 = "C5", "C_5", "continuous"
    calC1 = "calC1", "calC_1", "monotone"
    calC2 = "calC2", "calC_2", "monotone"
    calC3 = "calC3", "calC_3", "monotone"
    calC4 = "calC4", "calC_4", "monotone"
    calC5 = "calC5", "calC_5", "monotone"
    L1 = "L1", "L_1", "embedding"
    L2 = "L2", "L_2", "embedding"
    H1 = "H1", "H_1", "hardy"
    H2 = "H2", "H_2", "hardy"
    H3 = "H3", "H_3", "hardy"
    H4 = "H4", "H_4", "hardy"
    A1 = "A1", "calA_1", "discrete"
    A2 = "A2", "calA_2", "discrete"
    A3 = "A3", "calA_3", "discrete"
    A4 = "A4", "calA_4", "discrete"
    B1 = "B1", "calB_1", "discrete"
    B2 = "B2", "calB_2", "discrete"

    # intermediate quantities of the equivalence proofs
    PA1 = "PA1", "A_1", "proof"
    PA2 = "PA2", "A_2", "proof"
    PA3 = "PA3", "A_3", "proof"
    PA4 = "PA4", "A_4", "proof"
    PB2 = "PB2", "B_2", "proof"


class Regime(Enum):
    """
    exponent regimes, with the constants combined in each case;
    main compares p with r and q, monotone compares p with q and 1
    """

    def __new__(cls, key, main, monotone):
        obj = object.__new__(cls)
        obj._value_ = key

        obj.main = main
        obj.monotone = monotone
        return obj

    i = "i", ("C1",), ("calC1",)
    ii = "ii", ("C2", "C3"), ("calC2", "calC3")
    iii = "iii", ("C1", "C4"), ("calC1", "calC4")
    iv = "iv", ("C3", "C5"), ("calC3", "calC5")

    @property
    def discrete(self):
        return {
            Regime.i: ("A1", "B1"),
            Regime.ii: ("A2", "B2"),
            Regime.iii: ("A3", "B1"),
            Regime.iv: ("A4", "B2"),
        }[self]


class Verdict(Enum):
    def __new__(cls, key, exit_code):
        obj = object.__new__(cls)
        obj._value_ = key

        obj.exit_code = exit_code
        return obj

    CONSISTENT = "CONSISTENT", 0
    INCONSISTENT = "INCONSISTENT", 2
    DEGENERATE = "DEGENERATE", 3


class Mode(Enum):
    main = "main"
    monotone = "monotone"
    discrete_embedding = "discrete-embedding"
    discrete_hardy = "discrete-hardy"
    lemma_checks = "lemma-checks"


def main_regime(p, q, r):
    """
    case of the iterated inequality, ties resolve by the non-strict inequalities

    :type p: float
    :type q: float
    :type r: float
    :rtype: Regime
    """
    if p <= r and p <= q:
        return Regime.i
    if r < p <= q:
        return Regime.ii
    if q < p <= r:
        return Regime.iii
    return Regime.iv


def monotone_regime(p, q):
    """
    :type p: float
    :type q: float
    :rtype: Regime
    """
    if p <= q and p <= 1:
        return Regime.i
    if q < p <= 1:
        return Regime.ii
    if 1 < p <= q:
        return Regime.iii
    return Regime.iv


def hardy_regime(p, q):
    """
    regime of the discrete hardy inequality: (i) H1, (ii) H2, (iii) H3, (iv) H4

    :type p: float
    :type q: float
    :rtype: ConstantName
    """
    if p <= 1 and p <= q:
        return ConstantName.H1
    if q < p <= 1:
        return ConstantName.H2
    if 1 < p and q < p:
        return ConstantName.H3
    return ConstantName.H4


def embedding_regime(p, q):
    """
    :rtype: ConstantName
    """
    return ConstantName.L1 if p <= q else ConstantName.L2


# mode-independent defaults
SCHEMA_VERSION = 1
DEFAULT_BAND = (1e-2, 1e2)
DEFAULT_K_MAX = 60
DEFAULT_CELL_POINTS = 512
SEQUENCE_TOLERANCE = 1e-9
