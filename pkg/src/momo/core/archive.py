"""Elitist archive of mutually non-dominated solutions."""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..errors import StateError
from .dominance import Dominance, dominates
from .types import ObjectiveSense, Solution


class Archive:
    """Bounded or unbounded store of non-dominated solutions.

    Insertion enforces mutual non-domination under the constrained comparator:
    an infeasible candidate is rejected whenever a feasible member exists, and
    a feasible candidate evicts all infeasible members.  When a capacity is
    configured, overflow removes the member picked by ``truncation`` (a
    callable mapping the member list to the index to drop); without one the
    most crowded member by nearest-neighbour distance is dropped.
    """

    def __init__(self, sense: ObjectiveSense | None = None,
                 capacity: int | None = None, truncation=None):
        if capacity is not None and capacity < 1:
            raise ValueError("archive capacity must be positive")
        self.sense = sense
        self.capacity = capacity
        self.truncation = truncation
        self.members: list[Solution] = []

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def insert(self, solution: Solution) -> bool:
        """Try to add a solution; returns True when it enters the archive."""
        if not solution.evaluated:
            raise StateError("cannot archive an unevaluated solution")
        if not solution.feasible:
            if any(s.feasible for s in self.members):
                return False
            # among infeasibles keep the least-violating ones only
            best = min((s.violation for s in self.members), default=np.inf)
            if solution.violation > best:
                return False
            if solution.violation < best:
                self.members = []
            self.members.append(solution)
            self._enforce_capacity()
            return True
        if solution.feasible and any(not s.feasible for s in self.members):
            self.members = [s for s in self.members if s.feasible]
        survivors = []
        for member in self.members:
            rel = dominates(member.objectives, solution.objectives, self.sense)
            if rel in (Dominance.A_DOMINATES, Dominance.EQUAL):
                return False
            if rel is not Dominance.B_DOMINATES:
                survivors.append(member)
        survivors.append(solution)
        self.members = survivors
        self._enforce_capacity()
        return True

    def extend(self, solutions) -> None:
        for s in solutions:
            self.insert(s)

    def update_batch(self, candidates) -> None:
        """Vectorized bulk insert with the same invariants as :meth:`insert`.

        The union of members and candidates is reduced to its constrained
        non-dominated subset (duplicates collapsed), then truncated to
        capacity.
        """
        pool = list(self.members) + [s for s in candidates if s.evaluated]
        if not pool:
            return
        feasible = [s for s in pool if s.feasible]
        if feasible:
            pool = feasible
        F = np.vstack([s.objectives for s in pool])
        if self.sense is not None:
            F = self.sense.orient(F)
        degree = np.array([s.violation for s in pool])
        mask = kernels.non_dominated_mask(F, degree)
        seen: set[bytes] = set()
        members = []
        for keep, s in zip(mask, pool):
            if not keep:
                continue
            key = s.objectives.tobytes() + np.asarray(s.genotype, dtype=np.float64).tobytes()
            if key in seen:
                continue
            seen.add(key)
            members.append(s)
        self.members = members
        self._enforce_capacity()

    def _enforce_capacity(self) -> None:
        while self.capacity is not None and len(self.members) > self.capacity:
            if self.truncation is not None:
                idx = self.truncation(self.members)
            else:
                idx = self._most_crowded()
            del self.members[idx]

    def _most_crowded(self) -> int:
        F = np.vstack([s.objectives for s in self.members])
        if self.sense is not None:
            F = self.sense.orient(F)
        d = np.linalg.norm(F[:, None, :] - F[None, :, :], axis=2)
        np.fill_diagonal(d, np.inf)
        return int(d.min(axis=1).argmin())
