"""
cyclicweights - Weights of the binary cyclic codes B, M and C = B cap M
Dual weight sets, minimum distance and the genus-2 point counting behind them

Version: 0.3.0
"""

__version__ = "0.3.0"

from .binpoly import BinPoly, CodeFamily, cyclotomic_coset, generator_poly, minimal_poly
from .classify import (
    WeightReport,
    WeightStatus,
    mn_simple_exists,
    predict_weight_set,
    reproduce_tables,
)
from .codes import (
    CyclicCode,
    DualTriple,
    WeightCache,
    WeightDistribution,
    dual_weight_distribution,
    dual_weight_set,
    macwilliams_transform,
    min_distance_C,
)
from .config import EnumerationLimits, RunConfig
from .curves import Genus2CurveParams, genus2_point_count, weil_ap_check, x_points
from .errors import (
    BudgetExceededError,
    ConfigurationError,
    DegenerateCurveError,
    FieldDivisionError,
    FieldMismatchError,
    InternalConsistencyError,
)
from .gf2m import FieldElem, FieldSpec, get_field
from .numtheory import intervals
from .reporters import CSVReporter, JSONReporter, MarkdownReporter
from .validator import ClaimValidator

__all__ = [
    "BinPoly",
    "CodeFamily",
    "cyclotomic_coset",
    "generator_poly",
    "minimal_poly",
    "WeightReport",
    "WeightStatus",
    "mn_simple_exists",
    "predict_weight_set",
    "reproduce_tables",
    "CyclicCode",
    "DualTriple",
    "WeightCache",
    "WeightDistribution",
    "dual_weight_distribution",
    "dual_weight_set",
    "macwilliams_transform",
    "min_distance_C",
    "EnumerationLimits",
    "RunConfig",
    "Genus2CurveParams",
    "genus2_point_count",
    "weil_ap_check",
    "x_points",
    "BudgetExceededError",
    "ConfigurationError",
    "DegenerateCurveError",
    "FieldDivisionError",
    "FieldMismatchError",
    "InternalConsistencyError",
    "FieldElem",
    "FieldSpec",
    "get_field",
    "intervals",
    "CSVReporter",
    "JSONReporter",
    "MarkdownReporter",
    "ClaimValidator",
]
