"""Configuration parsing, batch execution and reporters."""

from .config import ExperimentConfig, ListenerSpec, parse_config, serialize_config
from .reporters import read_front_csv, write_front_csv
from .runner import RunRecord, effective_seeds, execute_run, run_experiment

__all__ = [
    "ExperimentConfig",
    "ListenerSpec",
    "RunRecord",
    "effective_seeds",
    "execute_run",
    "parse_config",
    "read_front_csv",
    "run_experiment",
    "serialize_config",
    "write_front_csv",
]
