"""MOEA/D: Chebyshev decomposition over a simplex-lattice weight set.

Adapted to the generational engine: each subproblem contributes one offspring
per generation (parents drawn from its neighbourhood), and each offspring may
replace at most ``replacement_limit`` members of that neighbourhood when its
scalarized value improves.  Constraint pressure uses the feasibility-first
rule per slot.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .base import RunContext, Strategy, oriented
from .weights import IdealPoint, WeightVectorSet, das_dennis, tchebycheff


def _weight_matrix(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Exactly n simplex weights: the largest lattice that fits, plus random fill."""
    p = 1
    while comb(m + p, p + 1) <= n:  # next lattice still fits
        p += 1
    base = das_dennis(m, p)
    if base.shape[0] > n:
        base = base[:n]
    if base.shape[0] < n:
        extra = rng.dirichlet(np.ones(m), size=n - base.shape[0])
        base = np.vstack([base, extra])
    return base


class MOEAD(Strategy):
    id = "moead"
    params_spec = {"neighborhood_size": 20, "replacement_limit": 2}

    def __init__(self, **params):
        super().__init__(**params)
        self.weights: WeightVectorSet | None = None
        self.ideal: IdealPoint | None = None

    def setup(self, ctx: RunContext) -> None:
        lam = _weight_matrix(ctx.sense.m, ctx.pop_size, ctx.rng)
        self.weights = WeightVectorSet.build(lam, int(self.params["neighborhood_size"]))
        self.ideal = IdealPoint(ctx.sense.m)

    def initialize(self, pop, ctx: RunContext):
        self.ideal.update(oriented(pop, ctx.sense))
        return []

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        F = oriented(pop, ctx.sense)
        self.ideal.update(F)
        for i, s in enumerate(pop):
            lam = self.weights.vectors[i % len(self.weights)]
            s.fitness.scalar_quality = tchebycheff(lam, F[i], self.ideal.z)

    def mating_selection(self, pop, archive, ctx: RunContext):
        self.fitness_assignment(pop, archive, ctx)
        parents = []
        for i in range(ctx.pop_size):
            hood = self.weights.neighbors[i % len(self.weights)]
            parents.append(pop[int(hood[ctx.rng.integers(len(hood))])])
        return parents

    def environmental_selection(self, pop, offspring, archive, ctx: RunContext):
        survivors = list(pop)
        F_off = oriented(offspring, ctx.sense)
        self.ideal.update(F_off)
        z = self.ideal.z
        limit = int(self.params["replacement_limit"])
        for j, child in enumerate(offspring):
            hood = self.weights.neighbors[j % len(self.weights)]
            order = ctx.rng.permutation(len(hood))
            replaced = 0
            for o in order:
                k = int(hood[o])
                slot = survivors[k]
                if child.feasible != slot.feasible:
                    better = child.feasible
                elif not child.feasible:
                    better = child.violation < slot.violation
                else:
                    lam = self.weights.vectors[k]
                    f_slot = ctx.sense.orient(slot.objectives)
                    better = tchebycheff(lam, F_off[j], z) < tchebycheff(lam, f_slot, z)
                if better:
                    survivors[k] = child
                    replaced += 1
                    if replaced >= limit:
                        break
        return survivors
