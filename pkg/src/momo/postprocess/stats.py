"""Nonparametric statistics for comparing algorithm runs."""

from __future__ import annotations

import numpy as np
from scipy.stats import chi2

from ..errors import ConfigurationError


def midranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..N with ties sharing their average rank."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    sorted_vals = values[order]
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def kruskal_wallis(groups) -> tuple[float, int, float]:
    """Rank-based H test across >= 2 groups; returns (H, df, p).

    H uses mid-ranks and the tie correction 1 - sum(t^3 - t)/(N^3 - N); the
    p-value comes from the chi-square upper tail with k-1 degrees of freedom.
    All-identical samples short-circuit to H = 0, p = 1.
    """
    groups = [np.asarray(g, dtype=np.float64) for g in groups]
    if len(groups) < 2:
        raise ConfigurationError("kruskal-wallis needs at least two groups")
    if any(len(g) == 0 for g in groups):
        raise ConfigurationError("kruskal-wallis groups must be non-empty")
    pooled = np.concatenate(groups)
    n_total = len(pooled)
    if n_total < 3:
        raise ConfigurationError("kruskal-wallis needs at least three observations")
    df = len(groups) - 1
    if np.all(pooled == pooled[0]):
        return 0.0, df, 1.0
    ranks = midranks(pooled)
    h = 0.0
    offset = 0
    for g in groups:
        r = ranks[offset : offset + len(g)]
        h += len(g) * r.mean() ** 2
        offset += len(g)
    h = 12.0 / (n_total * (n_total + 1)) * h - 3.0 * (n_total + 1)
    _, counts = np.unique(pooled, return_counts=True)
    correction = 1.0 - ((counts**3 - counts).sum()) / (n_total**3 - n_total)
    if correction <= 0.0:
        return 0.0, df, 1.0
    h /= correction
    return float(h), df, float(chi2.sf(h, df))
