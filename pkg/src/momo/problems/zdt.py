"""ZDT bi-objective benchmark family (variants 1-3), canonical formulation."""

from __future__ import annotations

import numpy as np

from ..core.types import ObjectiveSense
from ..errors import ConfigurationError, DomainError
from ..variation import RealVectorSpec
from .base import Problem


class ZDTProblem(Problem):
    def __init__(self, variant: int = 1, n: int = 30):
        if variant not in (1, 2, 3):
            raise ConfigurationError(f"zdt variant must be 1, 2 or 3; got {variant}")
        if n < 2:
            raise ConfigurationError("zdt needs at least two variables")
        self.variant = variant
        self.name = f"zdt{variant}"
        self.encoding = RealVectorSpec((0.0,) * n, (1.0,) * n)
        self.sense = ObjectiveSense.minimize(2)

    def objective_values(self, X: np.ndarray) -> np.ndarray:
        if np.any(X < 0.0) or np.any(X > 1.0):
            raise DomainError("zdt variables must lie in [0, 1]")
        f1 = X[:, 0]
        g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
        ratio = f1 / g
        if self.variant == 1:
            h = 1.0 - np.sqrt(ratio)
        elif self.variant == 2:
            h = 1.0 - ratio**2
        else:
            h = 1.0 - np.sqrt(ratio) - ratio * np.sin(10.0 * np.pi * f1)
        return np.column_stack([f1, g * h])


def zdt1_front(samples: int = 1000) -> np.ndarray:
    """Analytic Pareto front of ZDT1 sampled uniformly in f1."""
    f1 = np.linspace(0.0, 1.0, samples)
    return np.column_stack([f1, 1.0 - np.sqrt(f1)])
