"""Benchmark registry and evaluation machinery.

Problems are addressable by string id; numeric parameters ride along as
dash-separated suffixes, e.g. ``dtlz2-m5`` (5 objectives) or ``zdt1-n10``
(10 variables).
"""

from __future__ import annotations

import re

from ..errors import ConfigurationError
from .base import EvaluationBudget, Evaluator, Problem, evaluate
from .dtlz import DTLZProblem
from .knapsack import KnapsackProblem
from .wrm import WRMProblem, wrm_constraints
from .zdt import ZDTProblem, zdt1_front

_REGISTRY = {
    "wrm": (WRMProblem, ()),
    "zdt1": (lambda **kw: ZDTProblem(1, **kw), ("n",)),
    "zdt2": (lambda **kw: ZDTProblem(2, **kw), ("n",)),
    "zdt3": (lambda **kw: ZDTProblem(3, **kw), ("n",)),
    "dtlz1": (lambda **kw: DTLZProblem(1, **kw), ("m", "k")),
    "dtlz2": (lambda **kw: DTLZProblem(2, **kw), ("m", "k")),
    "knapsack": (KnapsackProblem, ("n_items",)),
}

_SUFFIX = re.compile(r"^([a-z]+)(\d+)$")


def problem_ids() -> list[str]:
    return sorted(_REGISTRY)


def problem_params(problem_id: str) -> tuple[str, ...]:
    base = problem_id.split("-", 1)[0]
    if base not in _REGISTRY:
        raise ConfigurationError(f"unknown problem id '{problem_id}'")
    return _REGISTRY[base][1]


def make_problem(problem_id: str, **params) -> Problem:
    """Instantiate a registered problem, parsing id suffixes like ``-m5``."""
    parts = problem_id.split("-")
    base = parts[0]
    if base not in _REGISTRY:
        raise ConfigurationError(f"unknown problem id '{problem_id}'")
    factory, allowed = _REGISTRY[base]
    merged = dict(params)
    for token in parts[1:]:
        match = _SUFFIX.match(token)
        if not match:
            raise ConfigurationError(f"bad problem suffix '{token}' in '{problem_id}'")
        key, value = match.group(1), int(match.group(2))
        if key == "n" and "n_items" in allowed:
            key = "n_items"
        if key not in allowed:
            raise ConfigurationError(
                f"problem '{base}' does not accept parameter '{key}'"
            )
        merged[key] = value
    return factory(**merged)


__all__ = [
    "DTLZProblem",
    "EvaluationBudget",
    "Evaluator",
    "KnapsackProblem",
    "Problem",
    "WRMProblem",
    "ZDTProblem",
    "evaluate",
    "make_problem",
    "problem_ids",
    "problem_params",
    "wrm_constraints",
    "zdt1_front",
]
