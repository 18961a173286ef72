"""Simplex-lattice weight vectors and the decomposition bookkeeping types."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from ..errors import ConfigurationError


def das_dennis(m: int, p: int) -> np.ndarray:
    """All C(m+p-1, p) simplex-lattice points with components multiples of 1/p."""
    if m < 2 or p < 1:
        raise ConfigurationError("das-dennis requires m >= 2 and p >= 1")
    out = np.empty((comb(m + p - 1, p), m))
    row = 0
    point = np.zeros(m)

    def recurse(dim: int, remaining: int):
        nonlocal row
        if dim == m - 1:
            point[dim] = remaining
            out[row] = point / p
            row += 1
            return
        for units in range(remaining + 1):
            point[dim] = units
            recurse(dim + 1, remaining - units)

    recurse(0, p)
    return out


def divisions_for(m: int, target: int) -> int:
    """Smallest division count whose lattice has at least ``target`` points."""
    p = 1
    while comb(m + p - 1, p) < target:
        p += 1
    return p


@dataclass
class WeightVectorSet:
    """Decomposition weights with per-vector neighbour tables."""

    vectors: np.ndarray
    neighborhood_size: int
    neighbors: np.ndarray  # (n, T) indices sorted by increasing distance

    @classmethod
    def build(cls, vectors: np.ndarray, neighborhood_size: int) -> "WeightVectorSet":
        vectors = np.asarray(vectors, dtype=np.float64)
        n = vectors.shape[0]
        t = min(neighborhood_size, n)
        d = np.linalg.norm(vectors[:, None, :] - vectors[None, :, :], axis=2)
        # stable argsort keeps the vector itself first and ties deterministic
        neighbors = np.argsort(d, axis=1, kind="stable")[:, :t]
        return cls(vectors=vectors, neighborhood_size=t, neighbors=neighbors)

    def __len__(self) -> int:
        return self.vectors.shape[0]


class IdealPoint:
    """Componentwise best objective values seen so far (minimization-oriented)."""

    def __init__(self, m: int):
        self.z = np.full(m, np.inf)

    def update(self, F: np.ndarray) -> None:
        F = np.atleast_2d(F)
        self.z = np.minimum(self.z, F.min(axis=0))


def tchebycheff(lam: np.ndarray, f: np.ndarray, z: np.ndarray) -> float:
    """Weighted Chebyshev scalarization; zero weights floored at 1e-6."""
    w = np.maximum(np.asarray(lam, dtype=np.float64), 1e-6)
    return float(np.max(w * np.abs(np.asarray(f) - np.asarray(z))))
