"""DTLZ scalable benchmark family (variants 1-2), canonical formulation."""

from __future__ import annotations

import numpy as np

from ..core.types import ObjectiveSense
from ..errors import ConfigurationError, DomainError
from ..variation import RealVectorSpec
from .base import Problem


class DTLZProblem(Problem):
    def __init__(self, variant: int = 2, m: int = 3, k: int | None = None):
        if variant not in (1, 2):
            raise ConfigurationError(f"dtlz variant must be 1 or 2; got {variant}")
        if m < 2:
            raise ConfigurationError("dtlz needs at least two objectives")
        if k is None:
            k = 5 if variant == 1 else 10
        if k < 1:
            raise ConfigurationError("dtlz distance-variable count k must be >= 1")
        self.variant = variant
        self.k = k
        n = m - 1 + k
        self.name = f"dtlz{variant}"
        self.encoding = RealVectorSpec((0.0,) * n, (1.0,) * n)
        self.sense = ObjectiveSense.minimize(m)

    def objective_values(self, X: np.ndarray) -> np.ndarray:
        if np.any(X < 0.0) or np.any(X > 1.0):
            raise DomainError("dtlz variables must lie in [0, 1]")
        m = self.m
        if X.shape[1] != m - 1 + self.k:
            raise ConfigurationError(
                f"dtlz{self.variant} with m={m}, k={self.k} expects "
                f"{m - 1 + self.k} variables, got {X.shape[1]}"
            )
        pos = X[:, : m - 1]
        dist = X[:, m - 1 :]
        if self.variant == 1:
            g = 100.0 * (self.k + ((dist - 0.5) ** 2
                                   - np.cos(20.0 * np.pi * (dist - 0.5))).sum(axis=1))
            F = np.empty((X.shape[0], m))
            for i in range(m):
                f = 0.5 * (1.0 + g)
                f = f * pos[:, : m - 1 - i].prod(axis=1)
                if i > 0:
                    f = f * (1.0 - pos[:, m - 1 - i])
                F[:, i] = f
            return F
        g = ((dist - 0.5) ** 2).sum(axis=1)
        theta = pos * (np.pi / 2.0)
        F = np.empty((X.shape[0], m))
        for i in range(m):
            f = 1.0 + g
            f = f * np.cos(theta[:, : m - 1 - i]).prod(axis=1)
            if i > 0:
                f = f * np.sin(theta[:, m - 1 - i])
            F[:, i] = f
        return F
