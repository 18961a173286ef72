"""Objective-space record types: senses, fitness, constraints, solutions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError, StateError


@dataclass(frozen=True)
class ObjectiveSense:
    """Per-objective optimization direction and optional value bounds.

    Stored fitness values always keep the user-facing orientation; callers
    needing a canonical minimization view go through :meth:`orient`.
    """

    maximize: tuple[bool, ...]
    lower: tuple[float, ...] | None = None
    upper: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.maximize) < 2:
            raise DimensionError("at least two objectives are required")
        for bounds in (self.lower, self.upper):
            if bounds is not None and len(bounds) != len(self.maximize):
                raise DimensionError("objective bounds length mismatch")
        if self.lower is not None and self.upper is not None:
            if any(lo >= up for lo, up in zip(self.lower, self.upper)):
                raise DimensionError("objective bounds must satisfy lower < upper")

    @property
    def m(self) -> int:
        return len(self.maximize)

    @classmethod
    def minimize(cls, m: int) -> "ObjectiveSense":
        return cls(maximize=(False,) * m)

    def orient(self, values: np.ndarray) -> np.ndarray:
        """Return a minimization-oriented copy (maximized components negated)."""
        values = np.asarray(values, dtype=np.float64)
        if values.shape[-1] != self.m:
            raise DimensionError(
                f"expected {self.m} objective values, got {values.shape[-1]}"
            )
        if not any(self.maximize):
            return values.copy() if values is not values else np.array(values, copy=True)
        sign = np.where(np.asarray(self.maximize), -1.0, 1.0)
        return values * sign


@dataclass(eq=False)
class MOFitness:
    """Objective vector plus optional scalar quality and strategy-owned extras."""

    values: np.ndarray
    scalar_quality: float | None = None
    aux: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise DimensionError("fitness values must be a flat vector")

    def copy(self) -> "MOFitness":
        return MOFitness(self.values.copy(), self.scalar_quality, dict(self.aux))


@dataclass
class ConstraintRecord:
    feasible: bool
    degree_of_infeasibility: float

    def __post_init__(self):
        if self.degree_of_infeasibility < 0:
            raise ValueError("degree of infeasibility must be nonnegative")
        if self.feasible != (self.degree_of_infeasibility == 0.0):
            raise ValueError("feasible flag inconsistent with violation degree")

    @classmethod
    def from_degree(cls, degree: float) -> "ConstraintRecord":
        degree = float(degree)
        return cls(feasible=degree == 0.0, degree_of_infeasibility=degree)

    @classmethod
    def feasible_record(cls) -> "ConstraintRecord":
        return cls(feasible=True, degree_of_infeasibility=0.0)


@dataclass(eq=False)
class Solution:
    """Encoded genotype with its evaluation results; compared by identity."""

    genotype: np.ndarray
    fitness: MOFitness | None = None
    constraints: ConstraintRecord | None = None

    def __post_init__(self):
        self.genotype = np.asarray(self.genotype)

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None

    @property
    def objectives(self) -> np.ndarray:
        if self.fitness is None:
            raise StateError("solution has not been evaluated")
        return self.fitness.values

    @property
    def feasible(self) -> bool:
        return self.constraints is None or self.constraints.feasible

    @property
    def violation(self) -> float:
        return 0.0 if self.constraints is None else self.constraints.degree_of_infeasibility

    def copy(self) -> "Solution":
        return Solution(
            self.genotype.copy(),
            self.fitness.copy() if self.fitness else None,
            ConstraintRecord(self.constraints.feasible, self.constraints.degree_of_infeasibility)
            if self.constraints
            else None,
        )


def objective_matrix(solutions) -> np.ndarray:
    """Stack evaluated solutions into an (n, m) objective matrix."""
    if not solutions:
        return np.empty((0, 0))
    for s in solutions:
        if not s.evaluated:
            raise StateError("all solutions must be evaluated")
    return np.vstack([s.fitness.values for s in solutions])


def violation_vector(solutions) -> np.ndarray:
    """Per-solution infeasibility degree (0 where unconstrained/feasible)."""
    return np.array([s.violation for s in solutions], dtype=np.float64)
