"""HypE: fitness by exact or sampled shared-hypervolume contributions.

Up to three objectives the per-point fitness is the exact exclusive
contribution (the k=1 shared-volume weighting); beyond that it is a Monte
Carlo estimate over the bounding box with the 1/j sharing weights truncated
at the number of pending removals.  Environmental selection computes the
fitness once per reduction and removes the k worst in one pass, which keeps
desk-scale many-objective runs tractable.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..core.types import Solution
from ..errors import ConfigurationError
from ..indicators.hypervolume import hypervolume_exact
from ..variation import binary_tournament
from .base import RunContext, Strategy, feasibility_partition, oriented


def hype_weights(n: int, k: int) -> np.ndarray:
    """weights[c] is the fitness share a point gets from a sample with c dominators."""
    k = max(1, min(k, n))
    weights = np.zeros(n + 1)
    alpha = 1.0
    for j in range(1, n + 1):
        if j > 1:
            alpha *= (k - (j - 1)) / (n - (j - 1)) if n > j - 1 else 0.0
        if j > k:
            break
        weights[j] = alpha / j
    return weights


def hype_fitness(F: np.ndarray, ref: np.ndarray, k: int = 1,
                 sample_size: int = 10000,
                 rng: np.random.Generator | None = None) -> np.ndarray:
    """Shared-hypervolume fitness of every point of a minimization front."""
    F = np.asarray(F, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if np.any(F >= ref):
        raise ConfigurationError("reference point must be strictly worse than all points")
    n, m = F.shape
    if m <= 3:
        return _exact_contributions(F, ref)
    if rng is None:
        raise ConfigurationError("monte-carlo hype fitness needs an rng")
    lower = F.min(axis=0)
    volume = float(np.prod(ref - lower))
    samples = rng.uniform(lower, ref, size=(sample_size, m))
    weights = hype_weights(n, k)
    hits = kernels.mc_attribution(F, samples, weights)
    return hits * (volume / sample_size)


def _exact_contributions(F: np.ndarray, ref: np.ndarray) -> np.ndarray:
    total = hypervolume_exact(F, ref)
    out = np.empty(F.shape[0])
    for i in range(F.shape[0]):
        rest = np.delete(F, i, axis=0)
        out[i] = total - (hypervolume_exact(rest, ref) if rest.size else 0.0)
    return out


class HypE(Strategy):
    id = "hype"
    params_spec = {"sampling_size": 10000}

    def _fitness(self, F: np.ndarray, k: int, ctx: RunContext) -> np.ndarray:
        # normalize to the unit box so wildly different objective scales
        # contribute comparable volumes; reference point 1.1 per axis
        lo = F.min(axis=0)
        span = F.max(axis=0) - lo
        span[span == 0.0] = 1.0
        N = (F - lo) / span
        ref = np.full(F.shape[1], 1.1)
        return hype_fitness(N, ref, k=k, sample_size=int(self.params["sampling_size"]),
                            rng=ctx.rng)

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        fitness = self._fitness(oriented(pop, ctx.sense), 1, ctx)
        for s, f in zip(pop, fitness):
            s.fitness.aux["hype"] = float(f)
            s.fitness.scalar_quality = float(f)

    def mating_selection(self, pop, archive, ctx: RunContext):
        self.fitness_assignment(pop, archive, ctx)
        cmp = lambda a, b: ctx.compare(  # noqa: E731
            a, b, lambda x, y: (x.fitness.aux["hype"] < y.fitness.aux["hype"])
            - (x.fitness.aux["hype"] > y.fitness.aux["hype"]))
        return [binary_tournament(pop, cmp, ctx.rng) for _ in range(ctx.pop_size)]

    def environmental_selection(self, pop, offspring, archive, ctx: RunContext):
        union = list(pop) + list(offspring)
        n = ctx.pop_size
        selected, candidates, slots = feasibility_partition(union, n)
        if slots == 0:
            return selected
        F = oriented(candidates, ctx.sense)
        ranks = kernels.front_ranks(F)
        survivors: list[Solution] = list(selected)
        for r in range(int(ranks.max()) + 1):
            idx = np.flatnonzero(ranks == r)
            room = n - len(survivors)
            if len(idx) <= room:
                survivors.extend(candidates[i] for i in idx)
            else:
                k = len(idx) - room
                fitness = self._fitness(F[idx], k, ctx)
                keep = np.argsort(-fitness, kind="stable")[:room]
                for local, f in zip(idx, fitness):
                    candidates[local].fitness.aux["hype"] = float(f)
                survivors.extend(candidates[idx[o]] for o in keep)
            if len(survivors) == n:
                break
        return survivors
