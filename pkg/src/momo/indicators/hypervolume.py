"""Hypervolume: exact algorithms by dimension plus Monte Carlo estimation.

All functions take minimization-oriented points and a reference point that is
componentwise worse than every front member.  Exact paths: sort-and-sweep for
two objectives, dimension sweep for three, inclusion-exclusion for tiny
higher-dimensional fronts.  Everything else is sampled.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..errors import ConfigurationError

INCLUSION_EXCLUSION_LIMIT = 12


def _check(points: np.ndarray, ref: np.ndarray):
    points = np.asarray(points, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != ref.shape[0]:
        raise ConfigurationError("points and reference point disagree on dimension")
    if np.any(points >= ref):
        raise ConfigurationError("reference point must be strictly worse than every point")
    return points, ref


def hv_exact_2d(points: np.ndarray, ref: np.ndarray) -> float:
    """Sort-and-sweep over the first objective."""
    points, ref = _check(points, ref)
    mask = kernels.non_dominated_mask(points)
    pts = np.unique(points[mask], axis=0)  # sorted by f1 asc, f2 strictly desc
    prev_y = ref[1]
    hv = 0.0
    for x, y in pts:
        hv += (ref[0] - x) * (prev_y - y)
        prev_y = y
    return float(hv)


def hv_exact_3d(points: np.ndarray, ref: np.ndarray) -> float:
    """Dimension sweep: accumulate 2-d slices between consecutive f3 levels."""
    points, ref = _check(points, ref)
    mask = kernels.non_dominated_mask(points)
    pts = points[mask]
    order = np.argsort(pts[:, 2], kind="stable")
    pts = pts[order]
    hv = 0.0
    for i in range(len(pts)):
        z = pts[i, 2]
        z_next = pts[i + 1, 2] if i + 1 < len(pts) else ref[2]
        if z_next > z:
            slice_pts = pts[: i + 1, :2]
            hv += hv_exact_2d(slice_pts, ref[:2]) * (z_next - z)
    return float(hv)


def hv_inclusion_exclusion(points: np.ndarray, ref: np.ndarray) -> float:
    """Exact union volume over all point subsets; exponential, tiny fronts only."""
    points, ref = _check(points, ref)
    mask = kernels.non_dominated_mask(points)
    pts = points[mask]
    n = len(pts)
    if n > INCLUSION_EXCLUSION_LIMIT:
        raise ConfigurationError(
            f"inclusion-exclusion limited to {INCLUSION_EXCLUSION_LIMIT} points, got {n}"
        )
    hv = 0.0
    for subset in range(1, 1 << n):
        idx = [i for i in range(n) if subset >> i & 1]
        corner = pts[idx].max(axis=0)
        vol = float(np.prod(ref - corner))
        hv += vol if len(idx) % 2 == 1 else -vol
    return hv


def hypervolume_exact(points: np.ndarray, ref: np.ndarray) -> float:
    points = np.asarray(points, dtype=np.float64)
    m = points.shape[1]
    if m == 2:
        return hv_exact_2d(points, ref)
    if m == 3:
        return hv_exact_3d(points, ref)
    return hv_inclusion_exclusion(points, ref)


def hypervolume_mc(points: np.ndarray, ref: np.ndarray, samples: int = 10000,
                   rng: np.random.Generator | None = None):
    """Monte Carlo estimate; returns (value, standard error)."""
    points, ref = _check(points, ref)
    if rng is None:
        rng = np.random.default_rng()
    lower = points.min(axis=0)
    box = float(np.prod(ref - lower))
    draws = rng.uniform(lower, ref, size=(samples, points.shape[1]))
    hits = int(kernels.any_dominating(points, draws).sum())
    p = hits / samples
    return box * p, box * float(np.sqrt(p * (1.0 - p) / samples))


def hypervolume(points: np.ndarray, ref: np.ndarray, samples: int = 10000,
                rng: np.random.Generator | None = None) -> float:
    """Best available hypervolume: exact when tractable, sampled otherwise."""
    points = np.asarray(points, dtype=np.float64)
    m = points.shape[1]
    if m <= 3 or points.shape[0] <= INCLUSION_EXCLUSION_LIMIT:
        return hypervolume_exact(points, ref)
    return hypervolume_mc(points, ref, samples, rng)[0]
