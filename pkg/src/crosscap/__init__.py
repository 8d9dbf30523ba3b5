"""Formal isometric realization of Whitney metrics as cross caps."""
from .exceptions import ConditioningError, ConsistencyError, DomainError
from .rings import FLOAT, RATIONAL, FloatRing, RationalRing, get_ring
from .series import (
    TruncBiSeries,
    TruncUniSeries,
    compose_pair,
    compose_uni,
    equals_mod,
    invert_pair,
    linear_combine,
    multiply,
    order_of,
    partial_derivative,
    shift_multiply,
)
from .geometry import (
    CrossCapGerm,
    MapJet,
    MetricJet,
    Report,
    first_fundamental_form,
    germ_to_mapjet,
    intrinsic_crosscap_test,
    metric_of_germ,
    validate_admissible,
    validate_normalized,
)
from .solver import (
    FormalSolution,
    base_case,
    extend,
    iter_solutions,
    realize,
    residuals,
    verify_realization,
)

from .invariants import (
    InvariantTable,
    canonical_germ,
    closed_form_check,
    closed_form_invariants,
    formal_isometry_check,
    invariants,
    invariants_of_germ,
    is_normal,
)

__version__ = "0.1.0"
