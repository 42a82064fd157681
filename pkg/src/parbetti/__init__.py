"""Exact Betti numbers of moduli of parabolic stable bundles on curves."""

from .laurent import (
    MAX_TRUNCATION,
    LaurentPoly,
    LaurentSeries,
    NonDivisible,
    TruncationLimit,
    divide_exact,
    one_minus,
    one_plus,
)
from .ratfunc import FactoredRatFunc, PoleAtPoint, expand_series
from .parabolic import (
    FlagPoint,
    Instance,
    Partition,
    QPData,
    canonical_form,
    flag_dim,
    make_data,
    moduli_dim,
    partitions,
    slope_coincidence_witness,
    ss_equals_stable,
    subdata,
    weight_sum,
)
from .counting import (
    flag_family_count,
    flag_series,
    mass_series,
    mass_series_jac,
    poincare_from_count,
    poincare_substitute,
    siegel_mass,
)
from .result import BettiResult, NonPolynomialResult, result_from_poly
from .rank2 import (
    IntegralPsi,
    Rank2Profile,
    exists_stable_rank2,
    family_formula,
    poincare_rank2,
    profile_from_instance,
    rank2_case,
)
from .engine import (
    METHODS,
    MethodInapplicable,
    MismatchAgainstClosed,
    StrictSemistable,
    TruncationTooSmall,
    applicable_methods,
    compare_methods,
    compute,
    poincare_closed,
    poincare_qclosed,
    recursion_poincare,
    siegel_check,
)

__all__ = [
    "MAX_TRUNCATION",
    "LaurentPoly",
    "LaurentSeries",
    "NonDivisible",
    "TruncationLimit",
    "divide_exact",
    "one_minus",
    "one_plus",
    "FactoredRatFunc",
    "PoleAtPoint",
    "expand_series",
    "FlagPoint",
    "Instance",
    "Partition",
    "QPData",
    "canonical_form",
    "flag_dim",
    "make_data",
    "moduli_dim",
    "partitions",
    "slope_coincidence_witness",
    "ss_equals_stable",
    "subdata",
    "weight_sum",
    "flag_family_count",
    "flag_series",
    "mass_series",
    "mass_series_jac",
    "poincare_from_count",
    "poincare_substitute",
    "siegel_mass",
    "BettiResult",
    "NonPolynomialResult",
    "result_from_poly",
    "IntegralPsi",
    "Rank2Profile",
    "exists_stable_rank2",
    "family_formula",
    "poincare_rank2",
    "profile_from_instance",
    "rank2_case",
    "METHODS",
    "MethodInapplicable",
    "MismatchAgainstClosed",
    "StrictSemistable",
    "TruncationTooSmall",
    "applicable_methods",
    "compare_methods",
    "compute",
    "poincare_closed",
    "poincare_qclosed",
    "recursion_poincare",
    "siegel_check",
]
