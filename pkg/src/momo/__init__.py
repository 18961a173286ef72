"""momo: multi- and many-objective metaheuristic optimization toolkit.

Generational EA and particle-swarm engines with pluggable multi-objective
strategies, constraint-aware evaluation, a quality-indicator suite, a
config-driven experiment runner and a statistical post-processing pipeline.
"""

from .algorithms import AlgorithmState, OperatorConfig, StopCondition, check_stop, run_ea, run_pso
from .core import (
    Archive,
    ConstraintRecord,
    Dominance,
    MOFitness,
    ObjectiveSense,
    Solution,
    constrained_compare,
    distance,
    dominates,
    pareto_filter,
)
from .problems import Evaluator, make_problem, problem_ids
from .strategies import make_strategy, strategy_ids

__version__ = "0.1.0"

__all__ = [
    "AlgorithmState",
    "Archive",
    "ConstraintRecord",
    "Dominance",
    "Evaluator",
    "MOFitness",
    "ObjectiveSense",
    "OperatorConfig",
    "Solution",
    "StopCondition",
    "check_stop",
    "constrained_compare",
    "distance",
    "dominates",
    "make_problem",
    "make_strategy",
    "pareto_filter",
    "problem_ids",
    "run_ea",
    "run_pso",
    "strategy_ids",
]
