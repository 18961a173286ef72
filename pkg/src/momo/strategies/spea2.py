"""SPEA2: strength/raw fitness with nearest-neighbour density and truncation.

Follows the population-as-archive formulation: environmental selection applies
the SPEA2 archive rule (non-dominated members first, distance-based truncation
or fitness-based fill) to the union of population and offspring, and the same
selected set is kept as the mating archive.
"""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from ..core.types import Solution, violation_vector
from ..variation import binary_tournament
from .base import RunContext, Strategy, feasibility_partition, oriented


def spea2_fitness(pool, sense) -> None:
    """Attach strength, raw, density and combined fitness aux values."""
    F = oriented(pool, sense)
    dom = kernels.domination_matrix(F, violation_vector(pool))
    strength = dom.sum(axis=1).astype(np.float64)
    raw = (strength[:, None] * dom).sum(axis=0)
    d = np.linalg.norm(F[:, None, :] - F[None, :, :], axis=2)
    np.fill_diagonal(d, np.inf)
    if len(pool) > 1:
        k = max(1, math.isqrt(len(pool)))
        sigma = np.sort(d, axis=1)[:, min(k - 1, len(pool) - 2)]
        density = 1.0 / (sigma + 2.0)
    else:
        density = np.zeros(1)
    fitness = raw + density
    for i, s in enumerate(pool):
        s.fitness.aux["strength"] = float(strength[i])
        s.fitness.aux["raw"] = float(raw[i])
        s.fitness.aux["density"] = float(density[i])
        s.fitness.aux["fitness"] = float(fitness[i])
        s.fitness.scalar_quality = float(fitness[i])


def _truncate(candidates, sense, capacity: int) -> list[Solution]:
    """Iteratively drop the member closest to its neighbours until it fits."""
    members = list(candidates)
    F = oriented(members, sense)
    d = np.linalg.norm(F[:, None, :] - F[None, :, :], axis=2)
    np.fill_diagonal(d, np.inf)
    alive = np.ones(len(members), dtype=bool)
    count = len(members)
    while count > capacity:
        live = np.flatnonzero(alive)
        # lexicographic comparison of sorted neighbour distances
        sorted_rows = np.sort(d[np.ix_(live, live)], axis=1)
        best = 0
        for i in range(1, len(live)):
            for a, b in zip(sorted_rows[i], sorted_rows[best]):
                if a != b:
                    if a < b:
                        best = i
                    break
        alive[live[best]] = False
        count -= 1
    return [m for keep, m in zip(alive, members) if keep]


def spea2_select(pool, sense, capacity: int) -> list[Solution]:
    spea2_fitness(pool, sense)
    nondom = [s for s in pool if s.fitness.aux["fitness"] < 1.0]
    if len(nondom) > capacity:
        return _truncate(nondom, sense, capacity)
    if len(nondom) < capacity:
        rest = sorted((s for s in pool if s.fitness.aux["fitness"] >= 1.0),
                      key=lambda s: s.fitness.aux["fitness"])
        return nondom + rest[: capacity - len(nondom)]
    return nondom


class SPEA2(Strategy):
    id = "spea2"
    uses_archive = True

    def initialize(self, pop, ctx: RunContext):
        return spea2_select(list(pop), ctx.sense, ctx.pop_size)

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        spea2_fitness(list(pop) + list(archive), ctx.sense)

    def mating_selection(self, pop, archive, ctx: RunContext):
        self.fitness_assignment(pop, archive, ctx)
        pool = list(archive) if archive else list(pop)
        cmp = lambda a, b: ctx.compare(  # noqa: E731
            a, b, lambda x, y: (x.fitness.aux["fitness"] > y.fitness.aux["fitness"])
            - (x.fitness.aux["fitness"] < y.fitness.aux["fitness"]))
        return [binary_tournament(pool, cmp, ctx.rng) for _ in range(ctx.pop_size)]

    def environmental_selection(self, pop, offspring, archive, ctx: RunContext):
        union = list(pop) + list(offspring) + [a for a in archive if a not in pop]
        selected, candidates, slots = feasibility_partition(union, ctx.pop_size)
        if slots == 0:
            return selected
        return spea2_select(candidates, ctx.sense, slots)

    def update_archive(self, pop, offspring, archive, ctx: RunContext):
        return list(pop)
