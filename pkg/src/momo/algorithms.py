"""Metaheuristic engines: the generational EA loop and the particle-swarm loop.

Engines are strategy-agnostic; they own initialization, variation, evaluation
and stop checking, and delegate every multi-objective decision to the plugged
strategy.  Budget checks happen at generation boundaries only, so a
generation is never truncated mid-evaluation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .core.archive import Archive
from .core.dominance import constrained_pareto_filter
from .core.types import Solution
from .errors import ConfigurationError
from .problems.base import Evaluator, Problem
from .strategies.base import RunContext
from .variation import (
    BitStringSpec,
    IntVectorSpec,
    RealVectorSpec,
    bit_flip_mutation,
    blx_alpha_crossover,
    get_operator,
    init_population,
    one_point_crossover,
    polynomial_mutation,
    sbx_crossover,
    uniform_int_mutation,
)


@dataclass
class StopCondition:
    """Disjunction of stop criteria; at least one must be configured."""

    max_generations: int | None = None
    max_evaluations: int | None = None
    target_quality: float | None = None
    predicate: object = None

    def __post_init__(self):
        if (self.max_generations is None and self.max_evaluations is None
                and self.target_quality is None and self.predicate is None):
            raise ConfigurationError("at least one stop condition must be set")


@dataclass
class AlgorithmState:
    population: list[Solution]
    archive: list[Solution] | Archive
    parents: list[Solution] = field(default_factory=list)
    offspring: list[Solution] = field(default_factory=list)
    generation: int = 0
    evaluator: Evaluator | None = None
    rng: np.random.Generator | None = None
    elapsed: float = 0.0

    @property
    def evaluations(self) -> int:
        return self.evaluator.budget.evaluations_used if self.evaluator else 0

    def archive_members(self) -> list[Solution]:
        return list(self.archive.members) if isinstance(self.archive, Archive) else list(self.archive)

    def front(self) -> list[Solution]:
        """Non-dominated feasible set over population plus archive."""
        sense = self.evaluator.problem.sense if self.evaluator else None
        return constrained_pareto_filter(self.population + self.archive_members(), sense)


def check_stop(state: AlgorithmState, conditions: StopCondition) -> bool:
    """True once any configured condition holds."""
    if conditions.max_generations is not None and state.generation >= conditions.max_generations:
        return True
    if (conditions.max_evaluations is not None
            and state.evaluations >= conditions.max_evaluations):
        return True
    if conditions.target_quality is not None:
        for s in state.population:
            q = s.fitness.scalar_quality if s.fitness else None
            if q is not None and q <= conditions.target_quality:
                return True
    if conditions.predicate is not None and conditions.predicate(state):
        return True
    return False


@dataclass
class OperatorConfig:
    """Crossover/mutation choice with engine-level application probabilities."""

    crossover: str = "sbx"
    crossover_prob: float = 0.9
    crossover_params: dict = field(default_factory=dict)
    mutation: str = "polynomial"
    mutation_prob: float = 1.0
    mutation_params: dict = field(default_factory=dict)

    def validate(self, encoding) -> None:
        for prob, label in ((self.crossover_prob, "crossover"), (self.mutation_prob, "mutation")):
            if not 0.0 <= prob <= 1.0:
                raise ConfigurationError(f"{label} probability must lie in [0, 1]")
        for op_id, kind in ((self.crossover, "crossover"), (self.mutation, "mutation")):
            info = get_operator(op_id)
            if info.kind != kind:
                raise ConfigurationError(f"operator '{op_id}' is not a {kind} operator")
            if not isinstance(encoding, info.encoding):
                raise ConfigurationError(
                    f"operator '{op_id}' does not support {type(encoding).__name__}"
                )


_CROSSOVERS = {"blx_alpha": blx_alpha_crossover, "sbx": sbx_crossover,
               "one_point": one_point_crossover}
_MUTATIONS = {"polynomial": polynomial_mutation, "bit_flip": bit_flip_mutation,
              "uniform_int": uniform_int_mutation}


def default_operators(encoding) -> OperatorConfig:
    if isinstance(encoding, RealVectorSpec):
        return OperatorConfig()
    if isinstance(encoding, BitStringSpec):
        return OperatorConfig(crossover="one_point", mutation="bit_flip")
    if isinstance(encoding, IntVectorSpec):
        return OperatorConfig(crossover="one_point", mutation="uniform_int")
    raise ConfigurationError(f"no default operators for {type(encoding).__name__}")


def _variate(parents, operators: OperatorConfig, encoding, rng) -> list[Solution]:
    """Pair parents, recombine with the crossover probability, then mutate."""
    cross = _CROSSOVERS[operators.crossover]
    mutate = _MUTATIONS[operators.mutation]
    genotypes = []
    for i in range(0, len(parents) - 1, 2):
        g1 = parents[i].genotype
        g2 = parents[i + 1].genotype
        if rng.random() < operators.crossover_prob:
            c1, c2 = cross(g1, g2, encoding, rng, **operators.crossover_params)
        else:
            c1, c2 = g1.copy(), g2.copy()
        genotypes.extend([c1, c2])
    if len(parents) % 2:
        genotypes.append(parents[-1].genotype.copy())
    out = []
    for g in genotypes:
        if rng.random() < operators.mutation_prob:
            g = mutate(g, encoding, rng, **operators.mutation_params)
        out.append(Solution(genotype=g))
    return out


def run_ea(problem: Problem, strategy, operators: OperatorConfig | None,
           pop_size: int, stop: StopCondition, rng: np.random.Generator,
           evaluator: Evaluator | None = None, callbacks=()) -> AlgorithmState:
    """Generational EA: init, evaluate, then the select/variate/replace cycle.

    Callbacks are (frequency, fn) pairs invoked with the state at matching
    generations and once at termination.
    """
    if operators is None:
        operators = default_operators(problem.encoding)
    operators.validate(problem.encoding)
    if evaluator is None:
        evaluator = Evaluator(problem)
    started = time.perf_counter()
    ctx = RunContext(problem=problem, pop_size=pop_size, rng=rng)
    strategy.setup(ctx)
    population = init_population(problem.encoding, pop_size, rng)
    evaluator.evaluate(population)
    archive = strategy.initialize(population, ctx)
    state = AlgorithmState(population=population, archive=archive,
                           evaluator=evaluator, rng=rng)
    _notify(callbacks, state, final=False)
    while not check_stop(state, stop):
        state.parents = strategy.mating_selection(state.population, state.archive, ctx)
        state.offspring = _variate(state.parents, operators, problem.encoding, rng)
        evaluator.evaluate(state.offspring)
        state.population = strategy.environmental_selection(
            state.population, state.offspring, state.archive, ctx)
        if len(state.population) != pop_size:
            raise RuntimeError(
                f"strategy '{strategy.id}' returned {len(state.population)} survivors "
                f"instead of {pop_size}")
        state.archive = strategy.update_archive(
            state.population, state.offspring, state.archive, ctx)
        state.generation += 1
        state.elapsed = time.perf_counter() - started
        _notify(callbacks, state, final=False)
    state.elapsed = time.perf_counter() - started
    _notify(callbacks, state, final=True)
    return state


def run_pso(problem: Problem, strategy, pop_size: int, stop: StopCondition,
            rng: np.random.Generator, evaluator: Evaluator | None = None,
            callbacks=()) -> AlgorithmState:
    """Particle swarm loop: move/turbulence, evaluate, memory and archive update."""
    if not isinstance(problem.encoding, RealVectorSpec):
        raise ConfigurationError("the PSO engine requires a real-vector encoding")
    if evaluator is None:
        evaluator = Evaluator(problem)
    started = time.perf_counter()
    ctx = RunContext(problem=problem, pop_size=pop_size, rng=rng)
    strategy.setup(ctx)
    swarm = init_population(problem.encoding, pop_size, rng, particles=True)
    evaluator.evaluate(swarm)
    archive = strategy.initialize(swarm, ctx)
    state = AlgorithmState(population=swarm, archive=archive,
                           evaluator=evaluator, rng=rng)
    _notify(callbacks, state, final=False)
    while not check_stop(state, stop):
        strategy.move(swarm, state.archive, ctx)
        evaluator.evaluate(swarm)
        strategy.update_memory(swarm, ctx)
        state.archive = strategy.update_archive(swarm, state.archive, ctx)
        state.generation += 1
        state.elapsed = time.perf_counter() - started
        _notify(callbacks, state, final=False)
    state.elapsed = time.perf_counter() - started
    _notify(callbacks, state, final=True)
    return state


def _notify(callbacks, state: AlgorithmState, final: bool) -> None:
    for frequency, fn in callbacks:
        if final or (frequency and state.generation % frequency == 0):
            fn(state, final)
