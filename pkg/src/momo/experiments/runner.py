"""Multi-seed batch execution of experiment configurations."""

from __future__ import annotations

import os
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..algorithms import OperatorConfig, StopCondition, run_ea, run_pso
from ..errors import ConfigurationError
from ..problems import Evaluator, make_problem
from ..strategies import make_strategy
from .config import ExperimentConfig
from .reporters import build_reporters, fmt

SEED_OVERRIDE_ENV = "MOMO_SEED_OVERRIDE"


@dataclass
class RunRecord:
    config_id: str
    config_hash: str
    seed: int
    run_dir: str
    front_path: str | None = None
    wall_time: float = 0.0
    evaluations: int = 0
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _operator_config(config: ExperimentConfig) -> OperatorConfig | None:
    if config.algorithm != "ea":
        return None
    return OperatorConfig(
        crossover=config.recombinator,
        crossover_prob=config.rec_prob,
        crossover_params=dict(config.recombinator_params),
        mutation=config.mutator,
        mutation_prob=config.mut_prob,
        mutation_params=dict(config.mutator_params),
    )


def execute_run(config: ExperimentConfig, seed: int, out_root) -> RunRecord:
    """Execute one (configuration, seed) pair, writing its reporter outputs."""
    run_dir = Path(out_root) / config.title / config.config_id
    record = RunRecord(config_id=config.config_id, config_hash=config.hash(),
                       seed=seed, run_dir=str(run_dir))
    try:
        problem = make_problem(config.problem)
        strategy = make_strategy(config.strategy, **config.strategy_params)
        evaluator = Evaluator(problem, mode=config.evaluator_mode)
        rng = np.random.Generator(np.random.PCG64(seed))
        stop = StopCondition(max_generations=config.max_generations,
                             max_evaluations=config.max_evaluations)
        callbacks = build_reporters(config.listeners, run_dir, seed, problem.sense)
        started = time.perf_counter()
        if config.algorithm == "pso":
            state = run_pso(problem, strategy, config.population_size, stop, rng,
                            evaluator=evaluator, callbacks=callbacks)
        else:
            state = run_ea(problem, strategy, _operator_config(config),
                           config.population_size, stop, rng,
                           evaluator=evaluator, callbacks=callbacks)
        record.wall_time = time.perf_counter() - started
        record.evaluations = state.evaluations
        front = run_dir / f"pf-seed{seed}.csv"
        if front.is_file():
            record.front_path = str(front)
        _write_meta(run_dir, seed, record)
    except Exception as exc:  # noqa: BLE001 - a failing run must not kill siblings
        record.error = f"{type(exc).__name__}: {exc}"
        record.wall_time = 0.0
        if os.environ.get("MOMO_DEBUG"):
            traceback.print_exc()
    return record


def _write_meta(run_dir: Path, seed: int, record: RunRecord) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    meta = run_dir / f"run-meta-seed{seed}.txt"
    meta.write_text(
        f"seed={seed}\nevaluations={record.evaluations}\n"
        f"wall_time_s={fmt(record.wall_time)}\n"
    )


def effective_seeds(config: ExperimentConfig) -> list[int]:
    """Config seeds, unless the override environment variable replaces them."""
    override = os.environ.get(SEED_OVERRIDE_ENV, "").strip()
    if override:
        try:
            return [int(tok) for tok in override.replace(",", " ").split()]
        except ValueError:
            raise ConfigurationError(
                f"{SEED_OVERRIDE_ENV} must hold integers, got '{override}'") from None
    return list(config.seeds)


def run_experiment(configs: list[ExperimentConfig], out_root,
                   parallel_runs: int = 1) -> list[RunRecord]:
    """Execute every (config, seed) pair; records keep (config, seed) order.

    Runs are isolated processes when ``parallel_runs`` exceeds one; output
    files are a pure function of (title, config id, seed), so interleaving
    cannot change contents.  A failing run records its error and does not
    abort the rest.
    """
    jobs = []
    for ci, config in enumerate(configs):
        for si, seed in enumerate(effective_seeds(config)):
            jobs.append((ci, si, config, seed))
    if parallel_runs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel_runs) as pool:
            futures = [pool.submit(execute_run, config, seed, out_root)
                       for _, _, config, seed in jobs]
            records = [f.result() for f in futures]
    else:
        records = [execute_run(config, seed, out_root) for _, _, config, seed in jobs]
    order = sorted(range(len(jobs)), key=lambda i: (jobs[i][0], jobs[i][1]))
    return [records[i] for i in order]
