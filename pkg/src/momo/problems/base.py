"""Problem base class, evaluation budget, and the sequential/parallel evaluator."""

from __future__ import annotations

import abc
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core.types import ConstraintRecord, MOFitness, ObjectiveSense
from ..errors import ConfigurationError, EvaluationError
from ..variation import EncodingSpec


class Problem(abc.ABC):
    """An optimization problem: encoding, objective batch, optional constraints."""

    name: str = "problem"
    encoding: EncodingSpec
    sense: ObjectiveSense

    @property
    def m(self) -> int:
        return self.sense.m

    @property
    def constrained(self) -> bool:
        return type(self).constraint_violations is not Problem.constraint_violations

    @abc.abstractmethod
    def objective_values(self, X: np.ndarray) -> np.ndarray:
        """Objective matrix (n, m) for a batch of genotypes stacked row-wise."""

    def constraint_violations(self, X: np.ndarray) -> np.ndarray | None:
        """Positive violation per constraint, shape (n, n_constraints); None if unconstrained."""
        return None


@dataclass
class EvaluationBudget:
    evaluations_used: int = 0
    max_evaluations: int | None = None

    def charge(self, count: int) -> None:
        if count < 0:
            raise ValueError("cannot decrease the evaluation counter")
        self.evaluations_used += count

    @property
    def exhausted(self) -> bool:
        return (self.max_evaluations is not None
                and self.evaluations_used >= self.max_evaluations)


def _fill(problem: Problem, solutions, offset: int) -> None:
    X = np.vstack([np.asarray(s.genotype, dtype=np.float64) for s in solutions])
    F = np.asarray(problem.objective_values(X), dtype=np.float64)
    bad = ~np.isfinite(F)
    if bad.any():
        idx = int(np.flatnonzero(bad.any(axis=1))[0])
        raise EvaluationError(
            f"objective evaluation produced a non-finite value for solution {offset + idx}",
            solution_index=offset + idx,
        )
    V = problem.constraint_violations(X)
    if V is not None:
        V = np.asarray(V, dtype=np.float64)
        degrees = V.sum(axis=1)
    else:
        degrees = None
    for i, s in enumerate(solutions):
        s.fitness = MOFitness(F[i].copy())
        s.constraints = (ConstraintRecord.from_degree(degrees[i])
                         if degrees is not None else ConstraintRecord.feasible_record())


def evaluate(problem: Problem, solutions, mode: str = "sequential",
             budget: EvaluationBudget | None = None, workers: int = 4) -> list:
    """Fill fitness and constraint records for a batch of solutions.

    Parallel mode partitions the batch across threads; objective functions
    are pure, so results are identical to the sequential path for any worker
    count.  The evaluation counter grows by the batch size.
    """
    solutions = list(solutions)
    if mode not in ("sequential", "parallel"):
        raise ConfigurationError(f"unknown evaluation mode '{mode}'")
    if not solutions:
        return solutions
    if mode == "sequential" or len(solutions) < 2 or workers < 2:
        _fill(problem, solutions, 0)
    else:
        step = max(1, -(-len(solutions) // workers))
        chunks = [(i, solutions[i : i + step]) for i in range(0, len(solutions), step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_fill, problem, chunk, off) for off, chunk in chunks]
            for f in futures:
                f.result()
    if budget is not None:
        budget.charge(len(solutions))
    return solutions


class Evaluator:
    """Evaluation front-end binding a problem, a mode and a budget counter."""

    def __init__(self, problem: Problem, mode: str = "sequential", workers: int = 4,
                 max_evaluations: int | None = None):
        if mode not in ("sequential", "parallel"):
            raise ConfigurationError(f"unknown evaluation mode '{mode}'")
        self.problem = problem
        self.mode = mode
        self.workers = workers
        self.budget = EvaluationBudget(max_evaluations=max_evaluations)

    def evaluate(self, solutions) -> list:
        return evaluate(self.problem, solutions, self.mode, self.budget, self.workers)
