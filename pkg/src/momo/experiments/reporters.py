"""Run reporters: Pareto-front CSV files and in-run indicator tables.

All numbers are serialized with 17 significant digits so files round-trip
binary doubles and reruns are byte-identical.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..algorithms import AlgorithmState
from ..core.types import ObjectiveSense
from ..indicators.metrics import unary_indicator
from .config import ListenerSpec


def fmt(value: float) -> str:
    return f"{float(value):.17g}"


def front_rows(state: AlgorithmState):
    """Feasible front members as (variables, objectives) pairs, sorted."""
    rows = [(s.genotype.astype(np.float64), s.fitness.values)
            for s in state.front() if s.feasible]
    rows.sort(key=lambda r: (tuple(r[1]), tuple(r[0])))
    return rows


def write_front_csv(state: AlgorithmState, path: Path) -> Path:
    """FrontFile: header var_0..var_{n-1},obj_0..obj_{m-1}, one row per solution."""
    problem = state.evaluator.problem
    n = problem.encoding.n
    m = problem.m
    header = ",".join([f"var_{i}" for i in range(n)] + [f"obj_{k}" for k in range(m)])
    lines = [header]
    for vars_, objs in front_rows(state):
        lines.append(",".join(fmt(v) for v in list(vars_) + list(objs)))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_front_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Load a FrontFile back into (variables, objectives) matrices."""
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip().split(",")
        n = sum(1 for h in header if h.startswith("var_"))
        m = sum(1 for h in header if h.startswith("obj_"))
        rows = [line.strip() for line in fh if line.strip()]
    if not rows:
        return np.empty((0, n)), np.empty((0, m))
    data = np.array([[float(tok) for tok in row.split(",")] for row in rows])
    return data[:, :n], data[:, n:]


class ParetoFrontReporter:
    """Writes the final non-dominated front of a run."""

    def __init__(self, spec: ListenerSpec, run_dir: Path, seed: int):
        self.path = Path(run_dir) / f"pf-seed{seed}.csv"

    def frequency(self):
        return None

    def __call__(self, state: AlgorithmState, final: bool) -> None:
        if final:
            write_front_csv(state, self.path)


class ComparisonReporter:
    """Appends unary indicator rows at a generation frequency plus termination.

    The hypervolume reference point comes from the listener configuration or
    defaults to the running nadir of all points seen so far, pushed 10% (of
    its magnitude, per objective) toward worse values.
    """

    def __init__(self, spec: ListenerSpec, run_dir: Path, seed: int,
                 sense: ObjectiveSense):
        self.spec = spec
        self.sense = sense
        self.path = Path(run_dir) / f"indicators-seed{seed}.csv"
        self.rows: list[str] = []
        self.reported: set[int] = set()
        self.nadir: np.ndarray | None = None
        self.rng = np.random.Generator(np.random.PCG64(seed ^ 0x5EED))

    def frequency(self):
        return self.spec.frequency

    def _reference(self, F: np.ndarray) -> np.ndarray:
        if self.spec.reference_point is not None:
            return self.sense.orient(np.asarray(self.spec.reference_point, dtype=np.float64))
        worst = F.max(axis=0)
        self.nadir = worst if self.nadir is None else np.maximum(self.nadir, worst)
        pad = 0.1 * np.abs(self.nadir)
        pad[pad == 0.0] = 0.1
        return self.nadir + pad

    def __call__(self, state: AlgorithmState, final: bool) -> None:
        due = final or (self.spec.frequency is not None
                        and state.generation % self.spec.frequency == 0)
        if not due or state.generation in self.reported:
            if final:
                self._write()
            return
        self.reported.add(state.generation)
        pool = state.population + state.archive_members()
        seen = self.sense.orient(np.vstack([s.fitness.values for s in pool]))
        front = [s for s in state.front() if s.feasible] or state.front()
        F = self.sense.orient(np.vstack([s.fitness.values for s in front]))
        ref = self._reference(seen)
        values = []
        for iid in self.spec.indicators:
            values.append(unary_indicator(iid, F, reference_point=ref, rng=self.rng))
        self.rows.append(",".join([str(state.generation), str(state.evaluations)]
                                  + [fmt(v) for v in values]))
        if final:
            self._write()

    def _write(self) -> None:
        header = ",".join(["generation", "evaluations"] + list(self.spec.indicators))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text("\n".join([header] + self.rows) + "\n")


def build_reporters(listeners, run_dir: Path, seed: int, sense: ObjectiveSense):
    """Reporter callbacks as (frequency, fn) pairs for the engines."""
    out = []
    for spec in listeners:
        if spec.type == "pareto_front":
            rep = ParetoFrontReporter(spec, run_dir, seed)
        else:
            rep = ComparisonReporter(spec, run_dir, seed, sense)
        out.append((rep.frequency(), rep))
    return out
