"""NSGA-III: reference-point niching over non-dominated fronts."""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..core.types import Solution, violation_vector
from .base import RunContext, Strategy, oriented
from .weights import das_dennis, divisions_for


def normalize_front(F: np.ndarray) -> np.ndarray:
    """Adaptive normalization via extreme-point hyperplane intercepts.

    Falls back to per-objective min-max when the extreme-point system is
    singular or produces unusable intercepts.
    """
    ideal = F.min(axis=0)
    shifted = F - ideal
    m = F.shape[1]
    weights = np.full((m, m), 1e-6)
    np.fill_diagonal(weights, 1.0)
    # achievement scalarizing function picks one extreme point per axis
    asf = (shifted[:, None, :] / weights[None, :, :]).max(axis=2)  # (n, m)
    extremes = shifted[asf.argmin(axis=0)]
    intercepts = None
    try:
        plane = np.linalg.solve(extremes, np.ones(m))
        with np.errstate(divide="ignore", over="ignore"):
            candidate = 1.0 / plane
        if np.all(np.isfinite(candidate)) and np.all(candidate > 1e-12):
            intercepts = candidate
    except np.linalg.LinAlgError:
        intercepts = None
    if intercepts is None:
        intercepts = shifted.max(axis=0)
    intercepts = np.where(intercepts <= 1e-12, 1.0, intercepts)
    return shifted / intercepts


def associate(N: np.ndarray, refs: np.ndarray):
    """Nearest reference line per point: (index, perpendicular distance).

    Distances come from the explicit residual vector; the squared-norm
    difference form cancels catastrophically for points on a line.
    """
    norms = np.linalg.norm(refs, axis=1)
    unit = refs / norms[:, None]
    proj = N @ unit.T  # (n, r) scalar projections
    resid = N[:, None, :] - proj[:, :, None] * unit[None, :, :]
    dist = np.linalg.norm(resid, axis=2)
    idx = dist.argmin(axis=1)
    return idx, dist[np.arange(len(N)), idx]


class NSGA3(Strategy):
    id = "nsga3"
    params_spec = {"divisions": 0}  # 0 = derive from population size

    def __init__(self, **params):
        super().__init__(**params)
        self.refs: np.ndarray | None = None

    def setup(self, ctx: RunContext) -> None:
        p = int(self.params["divisions"]) or divisions_for(ctx.sense.m, ctx.pop_size)
        self.refs = das_dennis(ctx.sense.m, p)

    def mating_selection(self, pop, archive, ctx: RunContext):
        # feasibility-only tournament; both-feasible ties resolve at random
        parents = []
        for _ in range(ctx.pop_size):
            i = int(ctx.rng.integers(len(pop)))
            j = int(ctx.rng.integers(len(pop)))
            a, b = pop[i], pop[j]
            if a.feasible != b.feasible:
                parents.append(a if a.feasible else b)
            elif not a.feasible and a.violation != b.violation:
                parents.append(a if a.violation < b.violation else b)
            else:
                parents.append(a if ctx.rng.random() < 0.5 else b)
        return parents

    def environmental_selection(self, pop, offspring, archive, ctx: RunContext):
        union = list(pop) + list(offspring)
        n = ctx.pop_size
        F = oriented(union, ctx.sense)
        ranks = kernels.front_ranks(F, violation_vector(union))
        survivors_idx: list[int] = []
        last_front: np.ndarray | None = None
        for r in range(int(ranks.max()) + 1):
            idx = np.flatnonzero(ranks == r)
            if len(survivors_idx) + len(idx) <= n:
                survivors_idx.extend(idx.tolist())
                if len(survivors_idx) == n:
                    return [union[i] for i in survivors_idx]
            else:
                last_front = idx
                break
        slots = n - len(survivors_idx)
        considered = np.array(survivors_idx + last_front.tolist(), dtype=np.int64)
        Nrm = normalize_front(F[considered])
        ref_idx, ref_dist = associate(Nrm, self.refs)
        n_prior = len(survivors_idx)
        niche = np.bincount(ref_idx[:n_prior], minlength=len(self.refs))
        # candidates in the critical front grouped by their reference line
        pending: dict[int, list[int]] = {}
        for local in range(n_prior, len(considered)):
            pending.setdefault(int(ref_idx[local]), []).append(local)
        chosen: list[int] = []
        while len(chosen) < slots:
            active = [r for r in pending if pending[r]]
            counts = np.array([niche[r] for r in active])
            lowest = np.flatnonzero(counts == counts.min())
            ref = active[int(lowest[ctx.rng.integers(len(lowest))])]
            members = pending[ref]
            if niche[ref] == 0:
                pick = min(members, key=lambda loc: ref_dist[loc])
            else:
                pick = members[int(ctx.rng.integers(len(members)))]
            members.remove(pick)
            niche[ref] += 1
            chosen.append(int(considered[pick]))
        return [union[i] for i in survivors_idx] + [union[i] for i in chosen]
