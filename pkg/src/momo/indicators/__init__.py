"""Quality indicators over fronts plus reference-front utilities."""

from .front import Front, build_reference_front, scale_fronts
from .hypervolume import (
    hv_exact_2d,
    hv_exact_3d,
    hv_inclusion_exclusion,
    hypervolume,
    hypervolume_exact,
    hypervolume_mc,
)
from .metrics import (
    BINARY_IDS,
    UNARY_IDS,
    additive_epsilon,
    binary_indicator,
    coverage,
    generalized_spread,
    generational_distance,
    indicator_ids,
    inverted_generational_distance,
    maximum_pf_error,
    multiplicative_epsilon,
    onvg,
    spacing,
    unary_indicator,
)

__all__ = [
    "BINARY_IDS",
    "Front",
    "UNARY_IDS",
    "additive_epsilon",
    "binary_indicator",
    "build_reference_front",
    "coverage",
    "generalized_spread",
    "generational_distance",
    "hv_exact_2d",
    "hv_exact_3d",
    "hv_inclusion_exclusion",
    "hypervolume",
    "hypervolume_exact",
    "hypervolume_mc",
    "indicator_ids",
    "inverted_generational_distance",
    "maximum_pf_error",
    "multiplicative_epsilon",
    "onvg",
    "scale_fronts",
    "spacing",
    "unary_indicator",
]
