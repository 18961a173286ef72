"""Unary and binary front quality indicators."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ConfigurationError, DimensionError, DomainError
from .front import Front
from .hypervolume import hypervolume

UNARY_IDS = ("hypervolume", "spacing", "onvg")
BINARY_IDS = ("gd", "igd", "eps_mult", "eps_add", "gen_spread", "max_pf_error", "coverage")


def _points(front) -> np.ndarray:
    if isinstance(front, Front):
        return front.oriented()
    return np.asarray(front, dtype=np.float64)


def spacing(front) -> float:
    """Schott's metric: deviation of nearest-neighbour L1 distances."""
    F = _points(front)
    n = len(F)
    if n < 2:
        return 0.0
    d = cdist(F, F, metric="cityblock")
    np.fill_diagonal(d, np.inf)
    nearest = d.min(axis=1)
    return float(np.sqrt(((nearest - nearest.mean()) ** 2).sum() / (n - 1)))


def onvg(front) -> float:
    return float(len(_points(front)))


def generational_distance(A, R) -> float:
    """Root of summed squared nearest-reference distances, divided by |A|."""
    a, r = _points(A), _points(R)
    if a.shape[1] != r.shape[1]:
        raise DimensionError("fronts disagree on objective count")
    d = cdist(a, r).min(axis=1)
    return float(np.sqrt((d**2).sum()) / len(a))


def inverted_generational_distance(A, R) -> float:
    return generational_distance(R, A)


def additive_epsilon(A, R) -> float:
    """Smallest shift making some A member weakly dominate each R member."""
    a, r = _points(A), _points(R)
    if a.shape[1] != r.shape[1]:
        raise DimensionError("fronts disagree on objective count")
    shifts = (a[:, None, :] - r[None, :, :]).max(axis=2)  # (|A|, |R|)
    return float(shifts.min(axis=0).max())


def multiplicative_epsilon(A, R) -> float:
    """Multiplicative analogue; requires strictly positive objective values."""
    a, r = _points(A), _points(R)
    if a.shape[1] != r.shape[1]:
        raise DimensionError("fronts disagree on objective count")
    if np.any(a <= 0.0) or np.any(r <= 0.0):
        raise DomainError("multiplicative epsilon needs strictly positive values")
    ratios = (a[:, None, :] / r[None, :, :]).max(axis=2)
    return float(ratios.min(axis=0).max())


def maximum_pf_error(A, R) -> float:
    a, r = _points(A), _points(R)
    if a.shape[1] != r.shape[1]:
        raise DimensionError("fronts disagree on objective count")
    return float(cdist(a, r).min(axis=1).max())


def generalized_spread(A, R) -> float:
    """Distribution metric mixing extreme-point reach and neighbour uniformity."""
    a, r = _points(A), _points(R)
    if a.shape[1] != r.shape[1]:
        raise DimensionError("fronts disagree on objective count")
    extremes = r[r.argmax(axis=0)]  # one boundary point per objective
    d_ext = cdist(extremes, a).min(axis=1)
    if len(a) < 2:
        return 1.0 if d_ext.sum() > 0 else 0.0
    d = cdist(a, a)
    np.fill_diagonal(d, np.inf)
    nn = d.min(axis=1)
    mean = nn.mean()
    num = d_ext.sum() + np.abs(nn - mean).sum()
    den = d_ext.sum() + len(a) * mean
    return float(num / den) if den > 0 else 0.0


def coverage(A, B) -> float:
    """Fraction of B weakly dominated by at least one member of A."""
    a, b = _points(A), _points(B)
    if a.shape[1] != b.shape[1]:
        raise DimensionError("fronts disagree on objective count")
    covered = (a[:, None, :] <= b[None, :, :]).all(axis=2).any(axis=0)
    return float(covered.mean())


def unary_indicator(indicator_id: str, front, reference_point=None,
                    samples: int = 10000, rng=None) -> float:
    """Dispatch a unary indicator by registry id."""
    F = _points(front)
    if F.shape[0] == 0:
        raise ConfigurationError("unary indicators need a non-empty front")
    if indicator_id == "hypervolume":
        if reference_point is None:
            raise ConfigurationError("hypervolume needs a reference point")
        return hypervolume(F, np.asarray(reference_point, dtype=np.float64),
                           samples=samples, rng=rng)
    if indicator_id == "spacing":
        return spacing(F)
    if indicator_id == "onvg":
        return onvg(F)
    raise ConfigurationError(f"unknown unary indicator '{indicator_id}'")


_BINARY = {
    "gd": generational_distance,
    "igd": inverted_generational_distance,
    "eps_mult": multiplicative_epsilon,
    "eps_add": additive_epsilon,
    "gen_spread": generalized_spread,
    "max_pf_error": maximum_pf_error,
    "coverage": coverage,
}


def binary_indicator(indicator_id: str, A, R) -> float:
    """Dispatch a binary indicator by registry id (A compared against R)."""
    try:
        fn = _BINARY[indicator_id]
    except KeyError:
        raise ConfigurationError(f"unknown binary indicator '{indicator_id}'") from None
    if _points(R).shape[0] == 0:
        raise ConfigurationError("binary indicators need a non-empty reference front")
    return fn(A, R)


def indicator_ids() -> list[str]:
    return sorted(UNARY_IDS + BINARY_IDS)
