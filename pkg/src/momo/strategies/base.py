"""Strategy contract: the pluggable multi-objective steps of the search engines.

A strategy owns archive initialization, fitness assignment, mating selection,
environmental selection (survivor choice) and archive update; the engine owns
the iteration structure, variation and evaluation.  Constraint pressure is
applied uniformly: while at least population-size feasible candidates exist,
no infeasible solution survives environmental selection.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field

import numpy as np

from ..core.dominance import constrained_compare
from ..core.types import ObjectiveSense, Solution, objective_matrix
from ..errors import StateError
from ..problems.base import Problem
from ..variation import binary_tournament


@dataclass
class RunContext:
    """Per-run state shared between engine and strategy."""

    problem: Problem
    pop_size: int
    rng: np.random.Generator
    params: dict = field(default_factory=dict)

    @property
    def sense(self) -> ObjectiveSense:
        return self.problem.sense

    def compare(self, a: Solution, b: Solution, fitness_cmp=None) -> int:
        return constrained_compare(a, b, fitness_cmp, self.sense)


def oriented(pop, sense: ObjectiveSense) -> np.ndarray:
    """Minimization-oriented objective matrix of a population."""
    return sense.orient(objective_matrix(pop))


def feasibility_partition(pool, n: int):
    """Split a selection pool by the feasibility-first rule.

    Returns ``(selected, candidates, slots)``: members admitted outright,
    the pool the strategy should pick the remaining ``slots`` from, and that
    remaining count.  With at least ``n`` feasible members the candidates are
    the feasible ones; otherwise all feasibles survive and the least-violating
    infeasibles fill up.
    """
    feasible = [s for s in pool if s.feasible]
    if len(feasible) >= n:
        return [], feasible, n
    infeasible = sorted((s for s in pool if not s.feasible), key=lambda s: s.violation)
    selected = feasible + infeasible[: n - len(feasible)]
    return selected, [], 0


class Strategy(abc.ABC):
    """Base multi-objective strategy for the generational EA engine."""

    id: str = "strategy"
    params_spec: dict[str, float] = {}
    uses_archive: bool = False

    def __init__(self, **params):
        unknown = set(params) - set(self.params_spec)
        if unknown:
            raise StateError(f"{self.id}: unknown parameters {sorted(unknown)}")
        self.params = {**self.params_spec, **params}

    def setup(self, ctx: RunContext) -> None:
        """Hook called once before the run starts."""

    def initialize(self, pop, ctx: RunContext) -> list[Solution]:
        """Create the initial archive (empty for archive-less strategies)."""
        return []

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        """Populate per-solution aux/scalar quality used by selection."""

    def mating_selection(self, pop, archive, ctx: RunContext) -> list[Solution]:
        """Pick ``ctx.pop_size`` parents; default is constrained binary tournament."""
        self.fitness_assignment(pop, archive, ctx)
        cmp = lambda a, b: ctx.compare(a, b)  # noqa: E731
        return [binary_tournament(pop, cmp, ctx.rng) for _ in range(ctx.pop_size)]

    @abc.abstractmethod
    def environmental_selection(self, pop, offspring, archive, ctx: RunContext) -> list[Solution]:
        """Choose exactly ``ctx.pop_size`` survivors from pop, offspring, archive."""

    def update_archive(self, pop, offspring, archive, ctx: RunContext) -> list[Solution]:
        return archive
