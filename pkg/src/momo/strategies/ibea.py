"""IBEA: selection driven by the pairwise additive-epsilon indicator."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError
from ..variation import binary_tournament
from .base import RunContext, Strategy, feasibility_partition, oriented


def _normalize(F: np.ndarray) -> np.ndarray:
    lo = F.min(axis=0)
    span = F.max(axis=0) - lo
    span[span == 0.0] = 1.0
    return (F - lo) / span


def additive_epsilon_matrix(F: np.ndarray) -> np.ndarray:
    """E[i, j] = smallest shift that makes point i weakly dominate point j."""
    return (F[:, None, :] - F[None, :, :]).max(axis=2)


def ibea_fitness(F: np.ndarray, kappa: float) -> np.ndarray:
    """F(x) = sum over y != x of -exp(-I(y, x) / kappa), on normalized values."""
    if kappa <= 0:
        raise ConfigurationError("ibea kappa must be positive")
    E = additive_epsilon_matrix(_normalize(F))
    C = -np.exp(-E / kappa)
    np.fill_diagonal(C, 0.0)
    return C.sum(axis=0)


class IBEA(Strategy):
    id = "ibea"
    params_spec = {"kappa": 0.05}

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        fitness = ibea_fitness(oriented(pop, ctx.sense), self.params["kappa"])
        for s, f in zip(pop, fitness):
            s.fitness.aux["fitness"] = float(f)
            s.fitness.scalar_quality = float(f)

    def mating_selection(self, pop, archive, ctx: RunContext):
        self.fitness_assignment(pop, archive, ctx)
        cmp = lambda a, b: ctx.compare(  # noqa: E731
            a, b, lambda x, y: (x.fitness.aux["fitness"] < y.fitness.aux["fitness"])
            - (x.fitness.aux["fitness"] > y.fitness.aux["fitness"]))
        return [binary_tournament(pop, cmp, ctx.rng) for _ in range(ctx.pop_size)]

    def environmental_selection(self, pop, offspring, archive, ctx: RunContext):
        union = list(pop) + list(offspring)
        selected, candidates, slots = feasibility_partition(union, ctx.pop_size)
        if slots == 0:
            return selected
        kappa = self.params["kappa"]
        F = oriented(candidates, ctx.sense)
        E = additive_epsilon_matrix(_normalize(F))
        C = -np.exp(-E / kappa)
        np.fill_diagonal(C, 0.0)
        fitness = C.sum(axis=0)
        alive = np.ones(len(candidates), dtype=bool)
        for _ in range(len(candidates) - slots):
            live = np.flatnonzero(alive)
            worst = live[int(fitness[live].argmin())]
            alive[worst] = False
            # removing y adds exp(-I(y, x)/kappa) back onto every survivor
            fitness[alive] -= C[worst, alive]
        survivors = [c for keep, c in zip(alive, candidates) if keep]
        for s, f in zip(survivors, fitness[alive]):
            s.fitness.aux["fitness"] = float(f)
            s.fitness.scalar_quality = float(f)
        return selected + survivors
