"""Pareto dominance relations, comparators and the non-dominated filter."""

from __future__ import annotations

import enum

import numpy as np

from .. import kernels
from ..errors import DimensionError, DomainError, StateError
from .types import ObjectiveSense, Solution, objective_matrix, violation_vector


class Dominance(enum.Enum):
    A_DOMINATES = "a_dominates"
    B_DOMINATES = "b_dominates"
    NON_DOMINATED = "non_dominated"
    EQUAL = "equal"


def dominates(a, b, sense: ObjectiveSense | None = None) -> Dominance:
    """Pareto-compare two objective vectors.

    Components are compared in minimization orientation; maximized objectives
    (per ``sense``) are negated at this boundary only.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError("objective vectors must share one dimension")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise DomainError("objective vectors must be finite")
    if sense is not None:
        a = sense.orient(a)
        b = sense.orient(b)
    if np.array_equal(a, b):
        return Dominance.EQUAL
    if (a <= b).all():
        return Dominance.A_DOMINATES
    if (b <= a).all():
        return Dominance.B_DOMINATES
    return Dominance.NON_DOMINATED


def compare_by_dominance(a: Solution, b: Solution, sense: ObjectiveSense | None = None) -> int:
    """-1 if a is preferred, 1 if b is, 0 on ties/non-domination."""
    rel = dominates(a.objectives, b.objectives, sense)
    if rel is Dominance.A_DOMINATES:
        return -1
    if rel is Dominance.B_DOMINATES:
        return 1
    return 0


def constrained_compare(a: Solution, b: Solution, fitness_cmp=None,
                        sense: ObjectiveSense | None = None) -> int:
    """Compare with feasibility as the primary criterion.

    Feasible beats infeasible; two infeasibles order by lower violation
    degree; otherwise the fitness comparator decides (Pareto dominance by
    default).  Returns -1 / 0 / 1 as in :func:`compare_by_dominance`.
    """
    for s in (a, b):
        if not s.evaluated:
            raise StateError("cannot compare unevaluated solutions")
    if a.feasible != b.feasible:
        return -1 if a.feasible else 1
    if not a.feasible:
        if a.violation < b.violation:
            return -1
        if b.violation < a.violation:
            return 1
        return 0
    if fitness_cmp is None:
        return compare_by_dominance(a, b, sense)
    return fitness_cmp(a, b)


def pareto_filter(solutions, sense: ObjectiveSense | None = None) -> list[Solution]:
    """Members of ``solutions`` not Pareto-dominated by any other member.

    Exact objective-space duplicates are kept when their decision vectors
    differ and collapsed to a single entry otherwise.
    """
    if not solutions:
        return []
    F = objective_matrix(solutions)
    if sense is not None:
        F = sense.orient(F)
    mask = kernels.non_dominated_mask(F)
    seen: set[bytes] = set()
    kept = []
    for keep, sol in zip(mask, solutions):
        if not keep:
            continue
        key = sol.genotype.tobytes() + sol.fitness.values.tobytes()
        if key in seen:
            continue
        seen.add(key)
        kept.append(sol)
    return kept


def constrained_pareto_filter(solutions, sense: ObjectiveSense | None = None) -> list[Solution]:
    """Non-dominated feasible members, or least-violating set when none feasible."""
    if not solutions:
        return []
    feasible = [s for s in solutions if s.feasible]
    pool = feasible if feasible else solutions
    if not feasible:
        F = objective_matrix(pool)
        if sense is not None:
            F = sense.orient(F)
        mask = kernels.non_dominated_mask(F, violation_vector(pool))
        pool = [s for keep, s in zip(mask, pool) if keep]
        return pool
    return pareto_filter(pool, sense)


def distance(a, b, metric: str = "euclidean") -> float:
    """Euclidean or Manhattan distance between two equal-length vectors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError("distance requires equal-length vectors")
    if metric == "euclidean":
        return float(np.linalg.norm(a - b))
    if metric == "manhattan":
        return float(np.abs(a - b).sum())
    raise DomainError(f"unknown metric '{metric}'")
