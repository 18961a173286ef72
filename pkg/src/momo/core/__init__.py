"""Objective-space primitives: records, dominance, archives, distances."""

from .archive import Archive
from .dominance import (
    Dominance,
    compare_by_dominance,
    constrained_compare,
    constrained_pareto_filter,
    distance,
    dominates,
    pareto_filter,
)
from .types import (
    ConstraintRecord,
    MOFitness,
    ObjectiveSense,
    Solution,
    objective_matrix,
    violation_vector,
)

__all__ = [
    "Archive",
    "ConstraintRecord",
    "Dominance",
    "MOFitness",
    "ObjectiveSense",
    "Solution",
    "compare_by_dominance",
    "constrained_compare",
    "constrained_pareto_filter",
    "distance",
    "dominates",
    "objective_matrix",
    "pareto_filter",
    "violation_vector",
]
