"""GrEA: grid-based many-objective selection.

Each objective range is widened by half a cell and split into ``divisions``
cells; selection metrics are the grid rank (coordinate sum), grid crowding
degree and the in-cell point distance, adjusted after every pick as published.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..core.types import Solution, violation_vector
from .base import RunContext, Strategy, feasibility_partition, oriented


def grid_setup(F: np.ndarray, div: int):
    """Widened per-objective grid: returns (coords, lower bounds, cell widths)."""
    fmin = F.min(axis=0)
    fmax = F.max(axis=0)
    span = fmax - fmin
    delta = span / (2.0 * div)
    lb = fmin - delta
    width = (span + 2.0 * delta) / div
    width = np.where(width == 0.0, 1.0, width)  # zero-range objective: one cell
    coords = np.floor((F - lb) / width).astype(np.int64)
    return np.clip(coords, 0, div - 1), lb, width


def grid_metrics(F: np.ndarray, div: int):
    """Grid coordinates plus (GR, GCPD) per point; GCD starts at zero."""
    coords, lb, width = grid_setup(F, div)
    gr = coords.sum(axis=1)
    corner = lb + coords * width
    gcpd = np.linalg.norm((F - corner) / width, axis=1)
    return coords, gr, gcpd


def _grid_dominates(ga: np.ndarray, gb: np.ndarray) -> bool:
    return bool((ga <= gb).all() and (ga < gb).any())


class GrEA(Strategy):
    id = "grea"
    params_spec = {"divisions": 10}

    def fitness_assignment(self, pop, archive, ctx: RunContext) -> None:
        F = oriented(pop, ctx.sense)
        coords, gr, gcpd = grid_metrics(F, int(self.params["divisions"]))
        for i, s in enumerate(pop):
            for k, c in enumerate(coords[i]):
                s.fitness.aux[f"grid_{k}"] = float(c)
            s.fitness.aux["grid_rank"] = float(gr[i])
            s.fitness.aux["gcpd"] = float(gcpd[i])

    def mating_selection(self, pop, archive, ctx: RunContext):
        F = oriented(pop, ctx.sense)
        coords, _, _ = grid_setup(F, int(self.params["divisions"]))
        gcd = self._pairwise_gcd(coords)
        deg = violation_vector(pop)
        parents = []
        for _ in range(ctx.pop_size):
            i = int(ctx.rng.integers(len(pop)))
            j = int(ctx.rng.integers(len(pop)))
            parents.append(pop[self._duel(i, j, F, coords, gcd, deg, ctx.rng)])
        return parents

    def _pairwise_gcd(self, coords: np.ndarray) -> np.ndarray:
        m = coords.shape[1]
        diff = np.abs(coords[:, None, :] - coords[None, :, :]).sum(axis=2)
        contrib = np.where(diff < m, m - diff, 0)
        np.fill_diagonal(contrib, 0)
        return contrib.sum(axis=1).astype(np.float64)

    def _duel(self, i, j, F, coords, gcd, deg, rng) -> int:
        # feasibility, then Pareto dominance, then grid dominance, then crowding
        if (deg[i] == 0.0) != (deg[j] == 0.0):
            return i if deg[i] == 0.0 else j
        if deg[i] > 0.0 and deg[i] != deg[j]:
            return i if deg[i] < deg[j] else j
        a_le = (F[i] <= F[j]).all()
        b_le = (F[j] <= F[i]).all()
        if a_le and not b_le:
            return i
        if b_le and not a_le:
            return j
        if _grid_dominates(coords[i], coords[j]):
            return i
        if _grid_dominates(coords[j], coords[i]):
            return j
        if gcd[i] != gcd[j]:
            return i if gcd[i] < gcd[j] else j
        return i if rng.random() < 0.5 else j

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
                sub = F[idx]
                coords, _, gcpd = grid_metrics(sub, int(self.params["divisions"]))
                picked = kernels.grea_select(coords, gcpd, room)
                survivors.extend(candidates[idx[p]] for p in picked)
            if len(survivors) == n:
                break
        return survivors
