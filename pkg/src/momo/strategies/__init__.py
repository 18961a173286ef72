"""Multi-objective strategy registry."""

from __future__ import annotations

from ..errors import ConfigurationError
from .base import RunContext, Strategy, feasibility_partition
from .grea import GrEA, grid_metrics, grid_setup
from .hype import HypE, hype_fitness, hype_weights
from .ibea import IBEA, additive_epsilon_matrix, ibea_fitness
from .moead import MOEAD
from .nsga2 import NSGA2, crowding_distance, rank_and_crowd
from .nsga3 import NSGA3, associate, normalize_front
from .smpso import SMPSO
from .spea2 import SPEA2, spea2_fitness, spea2_select
from .weights import IdealPoint, WeightVectorSet, das_dennis, divisions_for, tchebycheff

_REGISTRY = {
    "nsga2": NSGA2,
    "spea2": SPEA2,
    "ibea": IBEA,
    "moead": MOEAD,
    "nsga3": NSGA3,
    "grea": GrEA,
    "hype": HypE,
    "smpso": SMPSO,
}

# which engine each strategy plugs into
ENGINES = {sid: ("pso" if sid == "smpso" else "ea") for sid in _REGISTRY}


def strategy_ids() -> list[str]:
    return sorted(_REGISTRY)


def strategy_params(strategy_id: str) -> dict:
    if strategy_id not in _REGISTRY:
        raise ConfigurationError(f"unknown strategy id '{strategy_id}'")
    return dict(_REGISTRY[strategy_id].params_spec)


def make_strategy(strategy_id: str, **params):
    if strategy_id not in _REGISTRY:
        raise ConfigurationError(f"unknown strategy id '{strategy_id}'")
    cls = _REGISTRY[strategy_id]
    known = cls.params_spec
    unknown = set(params) - set(known)
    if unknown:
        raise ConfigurationError(
            f"strategy '{strategy_id}' got unknown parameters {sorted(unknown)}"
        )
    return cls(**params)


__all__ = [
    "ENGINES",
    "GrEA",
    "HypE",
    "IBEA",
    "IdealPoint",
    "MOEAD",
    "NSGA2",
    "NSGA3",
    "RunContext",
    "SMPSO",
    "SPEA2",
    "Strategy",
    "WeightVectorSet",
    "additive_epsilon_matrix",
    "associate",
    "crowding_distance",
    "das_dennis",
    "divisions_for",
    "feasibility_partition",
    "grid_metrics",
    "grid_setup",
    "hype_fitness",
    "hype_weights",
    "ibea_fitness",
    "make_strategy",
    "normalize_front",
    "rank_and_crowd",
    "spea2_fitness",
    "spea2_select",
    "strategy_ids",
    "strategy_params",
    "tchebycheff",
]
