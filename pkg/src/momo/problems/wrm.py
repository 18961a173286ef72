"""Water resource management planning: 3 decision variables, 5 costs, 7 constraints.

Minimizes drainage-network, storage, treatment, flood-damage and economic-loss
costs of a drainage system over detention storage capacity (x1), maximum
treatment rate (x2) and maximum allowable overflow rate (x3).  Constants are
kept exactly as printed in the problem's source formulation.
"""

from __future__ import annotations

import numpy as np

from ..core.types import ObjectiveSense
from ..errors import DomainError
from ..variation import RealVectorSpec
from .base import Problem

LOWER = (0.01, 0.01, 0.01)
UPPER = (0.45, 0.10, 0.10)

# each row: (reciprocal coefficient on x1*x2, linear coefficient on x3, offset, bound)
_CONSTRAINTS = (
    (0.00139, 4.94, -0.08, 1.0),
    (0.000306, 1.082, -0.0986, 1.0),
    (12.307, 49408.24, 4051.02, 50000.0),
    (2.098, 8046.33, -696.71, 16000.0),
    (2.138, 7883.39, -705.04, 10000.0),
    (0.417, 1721.26, -136.54, 2000.0),
    (0.164, 631.13, -54.48, 550.0),
)


class WRMProblem(Problem):
    name = "wrm"

    def __init__(self):
        self.encoding = RealVectorSpec(LOWER, UPPER)
        self.sense = ObjectiveSense.minimize(5)

    def objective_values(self, X: np.ndarray) -> np.ndarray:
        x1, x2, x3 = X[:, 0], X[:, 1], X[:, 2]
        prod = x1 * x2
        if np.any(prod == 0.0):
            raise DomainError("wrm objectives undefined where x1*x2 = 0")
        f1 = 106780.37 * (x2 + x3) + 61704.67
        f2 = 3000.00 * x1
        f3 = 30570.00 * 0.02289 * x2 / (0.06 * 2289.0) ** 0.65
        f4 = 250.00 * 2289.00 * np.exp(-39.75 * x2 + 9.90 * x3 + 2.74)
        f5 = 25.00 * (1.39 / prod) + 4940.0 * x3 + 2.74
        return np.column_stack([f1, f2, f3, f4, f5])

    def constraint_violations(self, X: np.ndarray) -> np.ndarray:
        x1, x2, x3 = X[:, 0], X[:, 1], X[:, 2]
        prod = x1 * x2
        if np.any(prod == 0.0):
            raise DomainError("wrm constraints undefined where x1*x2 = 0")
        cols = []
        for recip, lin, off, bound in _CONSTRAINTS:
            lhs = recip / prod + lin * x3 + off
            cols.append(np.maximum(0.0, lhs - bound))
        return np.column_stack(cols)


def wrm_constraints(x) -> tuple[bool, float]:
    """Feasibility flag and summed positive violation for one decision vector."""
    X = np.asarray(x, dtype=np.float64).reshape(1, 3)
    degree = float(WRMProblem().constraint_violations(X).sum())
    return degree == 0.0, degree
