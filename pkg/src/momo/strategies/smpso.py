"""SMPSO: speed-constrained multi-objective particle swarm strategy.

Leaders live in a crowding-distance archive; each particle follows a leader
picked by binary tournament on crowding distance, moves under the constricted
velocity rule, and a fraction of the swarm receives polynomial-mutation
turbulence every iteration.
"""

from __future__ import annotations

import numpy as np

from ..core.archive import Archive
from ..core.dominance import Dominance, constrained_pareto_filter, dominates
from ..core.types import ObjectiveSense, objective_matrix
from ..errors import ConfigurationError
from ..variation import RealVectorSpec, polynomial_mutation, smpso_move
from .base import RunContext
from .nsga2 import crowding_distance


def _crowding_truncation(sense: ObjectiveSense):
    def pick(members):
        F = sense.orient(objective_matrix(members))
        return int(crowding_distance(F).argmin())

    return pick


class SMPSO:
    """Strategy driving the particle-swarm engine."""

    id = "smpso"
    params_spec = {"archive_size": 100, "turbulence_prob": 0.15,
                   "mutation_eta": 20.0}

    def __init__(self, **params):
        unknown = set(params) - set(self.params_spec)
        if unknown:
            raise ConfigurationError(f"smpso: unknown parameters {sorted(unknown)}")
        self.params = {**self.params_spec, **params}

    def setup(self, ctx: RunContext) -> None:
        if not isinstance(ctx.problem.encoding, RealVectorSpec):
            raise ConfigurationError("smpso requires a real-vector encoding")

    def initialize(self, swarm, ctx: RunContext) -> Archive:
        archive = Archive(ctx.sense, capacity=int(self.params["archive_size"]),
                          truncation=_crowding_truncation(ctx.sense))
        for p in swarm:
            p.remember_best()
        archive.update_batch([p.snapshot() for p in swarm])
        return archive

    def _leader_pool(self, archive: Archive, swarm, ctx: RunContext):
        pool = archive.members
        if not pool:
            pool = constrained_pareto_filter(swarm, ctx.sense)
        crowd = crowding_distance(ctx.sense.orient(objective_matrix(pool)))
        return pool, crowd

    def _pick_leader(self, pool, crowd, ctx: RunContext) -> np.ndarray:
        if len(pool) == 1:
            return pool[0].genotype.astype(np.float64)
        i = int(ctx.rng.integers(len(pool)))
        j = int(ctx.rng.integers(len(pool)))
        if crowd[i] != crowd[j]:
            win = i if crowd[i] > crowd[j] else j
        else:
            win = i if ctx.rng.random() < 0.5 else j
        return pool[win].genotype.astype(np.float64)

    def move(self, swarm, archive: Archive, ctx: RunContext) -> None:
        """Update every particle's velocity/position, then apply turbulence."""
        spec = ctx.problem.encoding
        pool, crowd = self._leader_pool(archive, swarm, ctx)
        for p in swarm:
            leader = self._pick_leader(pool, crowd, ctx)
            c1 = float(ctx.rng.uniform(1.5, 2.5))
            c2 = float(ctx.rng.uniform(1.5, 2.5))
            smpso_move(p, leader, spec, ctx.rng, c1, c2)
        prob = float(self.params["turbulence_prob"])
        eta = float(self.params["mutation_eta"])
        for p in swarm:
            if ctx.rng.random() < prob:
                p.genotype = polynomial_mutation(p.genotype, spec, ctx.rng, eta=eta)
                p.fitness = None
                p.constraints = None

    def update_memory(self, swarm, ctx: RunContext) -> None:
        """Replace personal bests dominated by the new position; coin-flip ties."""
        for p in swarm:
            if p.pbest_fitness is None:
                p.remember_best()
                continue
            if p.feasible != (p.pbest_constraints is None or p.pbest_constraints.feasible):
                if p.feasible:
                    p.remember_best()
                continue
            rel = dominates(p.fitness.values, p.pbest_fitness.values, ctx.sense)
            if rel is Dominance.A_DOMINATES:
                p.remember_best()
            elif rel is not Dominance.B_DOMINATES and ctx.rng.random() < 0.5:
                p.remember_best()

    def update_archive(self, swarm, archive: Archive, ctx: RunContext) -> Archive:
        archive.update_batch([p.snapshot() for p in swarm])
        return archive
