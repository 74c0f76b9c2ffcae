# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

__version__ = "0.1.0"

from .constants import ConstantName, Mode, Regime, Verdict, main_regime, monotone_regime  # noqa: E402
from .constants_continuous import (  # noqa: E402
    ConstantReport,
    characterize_main,
    characterize_monotone,
    compute_C,
    compute_calC,
)
from .constants_discrete import (  # noqa: E402
    SeqWeights,
    discrete_characterization,
    discrete_hardy_constant,
    embedding_constant,
    local_hardy_B,
    proof_quantities,
)
from .discretize import (  # noqa: E402
    GeometricSeq,
    build_discretizing_sequence,
    check_dyadic_summation,
    check_geometric_equivalences,
    check_interval_equivalences,
)
from .measure_core import (  # noqa: E402
    ExponentSet,
    IntervalSpec,
    ProblemSpec,
    QuadSettings,
    V_p,
    WeightExpr,
    ess_sup,
    integrate,
    tail_W,
)
from .oracle import (  # noqa: E402
    GridFunction,
    maximize_discrete_embedding,
    maximize_discrete_hardy,
    maximize_ratio_main,
    maximize_ratio_monotone,
    ratio_main,
)
from .report import emit, parse_config, run_certification  # noqa: E402

__all__ = [
    "ConstantName",
    "Mode",
    "Regime",
    "Verdict",
    "main_regime",
    "monotone_regime",
    "ConstantReport",
    "characterize_main",
    "characterize_monotone",
    "compute_C",
    "compute_calC",
    "SeqWeights",
    "discrete_characterization",
    "discrete_hardy_constant",
    "embedding_constant",
    "local_hardy_B",
    "proof_quantities",
    "GeometricSeq",
    "build_discretizing_sequence",
    "check_dyadic_summation",
    "check_geometric_equivalences",
    "check_interval_equivalences",
    "ExponentSet",
    "IntervalSpec",
    "ProblemSpec",
    "QuadSettings",
    "V_p",
    "WeightExpr",
    "ess_sup",
    "integrate",
    "tail_W",
    "GridFunction",
    "maximize_discrete_embedding",
    "maximize_discrete_hardy",
    "maximize_ratio_main",
    "maximize_ratio_monotone",
    "ratio_main",
    "emit",
    "parse_config",
    "run_certification",
]
