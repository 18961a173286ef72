"""Objective-space fronts and front-level utilities (reference front, scaling)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..core.types import ObjectiveSense
from ..errors import DimensionError

log = logging.getLogger(__name__)


@dataclass(eq=False)
class Front:
    """A mutually non-dominated set of objective vectors.

    Construction filters dominated rows and collapses exact duplicates; the
    optional label records provenance (algorithm name, run id).
    """

    points: np.ndarray
    sense: ObjectiveSense | None = None
    label: str = ""
    _filtered: bool = field(default=False, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise DimensionError("front points must form a 2-d matrix")
        if not self._filtered and pts.shape[0]:
            oriented = self.sense.orient(pts) if self.sense else pts
            mask = kernels.non_dominated_mask(oriented)
            pts = pts[mask]
            pts = np.unique(pts, axis=0)
        self.points = pts
        self._filtered = True

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def oriented(self) -> np.ndarray:
        """Minimization-oriented copy of the points."""
        return self.sense.orient(self.points) if self.sense else self.points.copy()


def build_reference_front(fronts: list[Front]) -> Front:
    """Non-dominated union of several fronts, exact duplicates collapsed."""
    fronts = list(fronts)
    if not fronts:
        return Front(np.empty((0, 0)), _filtered=True)
    m = fronts[0].m
    for f in fronts:
        if f.m != m:
            raise DimensionError("fronts disagree on objective count")
    union = np.vstack([f.points for f in fronts])
    return Front(union, sense=fronts[0].sense, label="reference")


def scale_fronts(fronts: list[Front], reference: Front):
    """Min-max scale every front by the reference front's per-objective extremes.

    Reference points map into the unit box; other fronts may exceed it.  A
    degenerate objective (max equals min on the reference) maps to zero and is
    logged.  Returns (scaled fronts, scaled reference).
    """
    lo = reference.points.min(axis=0)
    hi = reference.points.max(axis=0)
    span = hi - lo
    degenerate = span == 0.0
    if degenerate.any():
        log.warning("degenerate objective(s) %s during front scaling; emitting zeros",
                    np.flatnonzero(degenerate).tolist())
    safe = np.where(degenerate, 1.0, span)

    def scale(front: Front) -> Front:
        pts = (front.points - lo) / safe
        pts[:, degenerate] = 0.0
        return Front(pts, sense=None, label=front.label, _filtered=True)

    return [scale(f) for f in fronts], scale(reference)
