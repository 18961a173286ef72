"""Bi-objective 0/1 knapsack: maximize packed value, minimize packed weight.

Overweight selections are infeasible with violation equal to the excess
weight.  The default instance is generated deterministically so the registry
id always denotes the same problem.
"""

from __future__ import annotations

import numpy as np

from ..core.types import ObjectiveSense
from ..errors import ConfigurationError
from ..variation import BitStringSpec
from .base import Problem

_DEFAULT_SEED = 20130901


class KnapsackProblem(Problem):
    name = "knapsack"

    def __init__(self, weights=None, values=None, capacity: float | None = None,
                 n_items: int = 20):
        if weights is None or values is None:
            gen = np.random.Generator(np.random.PCG64(_DEFAULT_SEED))
            weights = gen.integers(1, 31, size=n_items).astype(np.float64)
            values = gen.integers(1, 41, size=n_items).astype(np.float64)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.values = np.asarray(values, dtype=np.float64)
        if self.weights.shape != self.values.shape:
            raise ConfigurationError("knapsack weights and values must be equal length")
        if capacity is None:
            capacity = 0.5 * float(self.weights.sum())
        if capacity <= 0:
            raise ConfigurationError("knapsack capacity must be positive")
        self.capacity = float(capacity)
        self.encoding = BitStringSpec(len(self.weights))
        self.sense = ObjectiveSense(maximize=(True, False))

    def objective_values(self, X: np.ndarray) -> np.ndarray:
        value = X @ self.values
        weight = X @ self.weights
        return np.column_stack([value, weight])

    def constraint_violations(self, X: np.ndarray) -> np.ndarray:
        weight = X @ self.weights
        return np.maximum(0.0, weight - self.capacity)[:, None]
