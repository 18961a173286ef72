"""NSGA-II: fast non-dominated sorting with crowding-distance diversity."""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..core.types import Solution, violation_vector
from ..variation import binary_tournament
from .base import RunContext, Strategy, oriented


def crowding_distance(F: np.ndarray) -> np.ndarray:
    """Canonical crowding distance of one front; boundary points get +inf."""
    n, m = F.shape
    if n <= 2:
        return np.full(n, np.inf)
    out = np.zeros(n)
    for k in range(m):
        order = np.argsort(F[:, k], kind="stable")
        lo, hi = F[order[0], k], F[order[-1], k]
        out[order[0]] = out[order[-1]] = np.inf
        if hi == lo:
            continue
        gaps = (F[order[2:], k] - F[order[:-2], k]) / (hi - lo)
        out[order[1:-1]] += gaps
    return out


def rank_and_crowd(pop, ctx_or_sense) -> None:
    """Attach ``rank`` (1-based) and ``crowding`` aux values to a population."""
    sense = ctx_or_sense.sense if isinstance(ctx_or_sense, RunContext) else ctx_or_sense
    F = oriented(pop, sense)
    ranks = kernels.front_ranks(F, violation_vector(pop))
    for r in range(int(ranks.max()) + 1):
        idx = np.flatnonzero(ranks == r)
        dist = crowding_distance(F[idx])
        for j, i in enumerate(idx):
            pop[i].fitness.aux["rank"] = float(r + 1)
            pop[i].fitness.aux["crowding"] = float(dist[j])


def _crowded_cmp(a: Solution, b: Solution) -> int:
    ra, rb = a.fitness.aux["rank"], b.fitness.aux["rank"]
    if ra != rb:
        return -1 if ra < rb else 1
    ca, cb = a.fitness.aux["crowding"], b.fitness.aux["crowding"]
    if ca != cb:
        return -1 if ca > cb else 1
    return 0


class NSGA2(Strategy):
    id = "nsga2"

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        rank_and_crowd(pop, ctx)

    def mating_selection(self, pop, archive, ctx: RunContext):
        self.fitness_assignment(pop, archive, ctx)
        return [binary_tournament(pop, _crowded_cmp, ctx.rng) for _ in range(ctx.pop_size)]

    def environmental_selection(self, pop, offspring, archive, ctx: RunContext):
        union = list(pop) + list(offspring)
        n = ctx.pop_size
        F = oriented(union, ctx.sense)
        ranks = kernels.front_ranks(F, violation_vector(union))
        survivors: list[Solution] = []
        for r in range(int(ranks.max()) + 1):
            idx = np.flatnonzero(ranks == r)
            dist = crowding_distance(F[idx])
            for j, i in enumerate(idx):
                union[i].fitness.aux["rank"] = float(r + 1)
                union[i].fitness.aux["crowding"] = float(dist[j])
            if len(survivors) + len(idx) <= n:
                survivors.extend(union[i] for i in idx)
            else:
                order = np.argsort(-dist, kind="stable")
                take = n - len(survivors)
                survivors.extend(union[idx[o]] for o in order[:take])
            if len(survivors) == n:
                break
        return survivors
