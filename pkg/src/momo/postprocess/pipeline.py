"""Post-processing chain over an experiment output tree.

Handlers connect in a successor chain and communicate through a shared
context.  The default chain mirrors the standard study flow: merge per
algorithm, build the reference front, scale, unary boxplots, parallel
coordinates, the binary indicator table, and the Kruskal-Wallis test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..core.types import ObjectiveSense
from ..errors import ConfigurationError, MomoError
from ..experiments.reporters import fmt, read_front_csv
from ..indicators import Front, binary_indicator, build_reference_front, scale_fronts
from .stats import kruskal_wallis
from .svgplot import boxplot_svg, parallel_coordinates_svg

TABLE_INDICATORS = ("eps_mult", "eps_add", "gen_spread", "gd", "igd", "max_pf_error")


@dataclass
class PipelineContext:
    experiment_dir: Path
    report_dir: Path
    sense: ObjectiveSense | None = None
    algorithms: list[str] = field(default_factory=list)
    run_fronts: dict[str, list[np.ndarray]] = field(default_factory=dict)
    unary_values: dict[str, dict[str, list[float]]] = field(default_factory=dict)
    merged: dict[str, Front] = field(default_factory=dict)
    reference: Front | None = None
    scaled: dict[str, Front] = field(default_factory=dict)
    scaled_reference: Front | None = None
    table: dict[str, dict[str, float]] = field(default_factory=dict)
    artifacts: list[Path] = field(default_factory=list)

    def need(self, attr: str, producer: str):
        value = getattr(self, attr)
        if value is None or (hasattr(value, "__len__") and len(value) == 0):
            raise MomoError(
                f"missing upstream artifact '{attr}': run the '{producer}' step first")
        return value


class Handler:
    """One post-processing step; processing continues along the successor."""

    name = "handler"

    def __init__(self):
        self.successor: Handler | None = None

    def set_successor(self, handler: "Handler") -> "Handler":
        self.successor = handler
        return handler

    def process(self, ctx: PipelineContext) -> None:
        self.run(ctx)
        if self.successor is not None:
            self.successor.process(ctx)

    def run(self, ctx: PipelineContext) -> None:
        raise NotImplementedError


def merge_runs_pf(fronts: list[np.ndarray], sense: ObjectiveSense | None = None,
                  label: str = "") -> Front:
    """Non-dominated union of one algorithm's per-run fronts."""
    fronts = [np.asarray(f, dtype=np.float64) for f in fronts if len(f)]
    if not fronts:
        raise MomoError(f"no non-empty run fronts for '{label or 'algorithm'}'")
    return Front(np.vstack(fronts), sense=sense, label=label)


class MergeHandler(Handler):
    name = "merge"

    def run(self, ctx: PipelineContext) -> None:
        _discover(ctx)
        for algo in ctx.algorithms:
            front = merge_runs_pf(ctx.run_fronts[algo], ctx.sense, label=algo)
            ctx.merged[algo] = front
            path = ctx.report_dir / f"merged-{algo}.csv"
            _write_points_csv(front.points, path)
            ctx.artifacts.append(path)


class ReferenceHandler(Handler):
    name = "reference"

    def run(self, ctx: PipelineContext) -> None:
        merged = ctx.need("merged", "merge")
        ctx.reference = build_reference_front(list(merged.values()))
        path = ctx.report_dir / "reference-pf.csv"
        _write_points_csv(ctx.reference.points, path)
        ctx.artifacts.append(path)


class ScaleHandler(Handler):
    name = "scale"

    def run(self, ctx: PipelineContext) -> None:
        merged = ctx.need("merged", "merge")
        reference = ctx.need("reference", "reference")
        labels = list(merged)
        scaled, scaled_ref = scale_fronts([merged[a] for a in labels], reference)
        ctx.scaled = dict(zip(labels, scaled))
        ctx.scaled_reference = scaled_ref
        for algo, front in ctx.scaled.items():
            path = ctx.report_dir / f"scaled-{algo}.csv"
            _write_points_csv(front.points, path)
            ctx.artifacts.append(path)
        path = ctx.report_dir / "scaled-reference.csv"
        _write_points_csv(scaled_ref.points, path)
        ctx.artifacts.append(path)


class BoxplotHandler(Handler):
    """Per-run final unary indicator distributions, one SVG per indicator."""

    name = "boxplots"

    def run(self, ctx: PipelineContext) -> None:
        _discover(ctx)
        indicators = sorted({ind for per in ctx.unary_values.values() for ind in per})
        if not indicators:
            raise MomoError("missing upstream artifact: no indicators-seed*.csv files; "
                            "configure a comparison listener in the runs")
        for ind in indicators:
            groups = {algo: np.asarray(ctx.unary_values[algo].get(ind, []))
                      for algo in ctx.algorithms}
            groups = {k: v for k, v in groups.items() if v.size}
            medians = {k: float(np.median(v)) for k, v in groups.items()}
            # larger hypervolume is better; smaller spacing is more uniform
            best = (max(medians, key=medians.get) if ind == "hypervolume"
                    else min(medians, key=medians.get))
            path = ctx.report_dir / f"boxplot-{ind}.svg"
            boxplot_svg(groups, path, title=ind, best=best)
            ctx.artifacts.append(path)


class ParallelCoordinatesHandler(Handler):
    name = "parallel_coordinates"

    def run(self, ctx: PipelineContext) -> None:
        scaled = ctx.need("scaled", "scale")
        for algo, front in scaled.items():
            path = ctx.report_dir / f"parallel-{algo}.svg"
            parallel_coordinates_svg(front.points, path, title=algo)
            ctx.artifacts.append(path)


class IndicatorTableHandler(Handler):
    """Binary indicators of every algorithm's scaled front vs the scaled reference.

    The multiplicative epsilon is computed on values shifted by +1: scaling
    maps reference extremes to exactly zero, which the ratio-based indicator
    cannot take.
    """

    name = "indicators"

    def run(self, ctx: PipelineContext) -> None:
        scaled = ctx.need("scaled", "scale")
        reference = ctx.need("scaled_reference", "scale")
        for ind in TABLE_INDICATORS:
            ctx.table[ind] = {}
            for algo, front in scaled.items():
                if ind == "eps_mult":
                    value = binary_indicator(ind, front.points + 1.0, reference.points + 1.0)
                else:
                    value = binary_indicator(ind, front.points, reference.points)
                ctx.table[ind][algo] = value
        path = ctx.report_dir / "indicators.csv"
        algos = list(scaled)
        lines = [",".join(["indicator"] + algos + ["best"])]
        for ind in TABLE_INDICATORS:
            row = ctx.table[ind]
            best = min(row, key=row.get)  # every table indicator is minimized
            lines.append(",".join([ind] + [fmt(row[a]) for a in algos] + [best]))
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")
        ctx.artifacts.append(path)


class KruskalHandler(Handler):
    name = "kruskal"

    def run(self, ctx: PipelineContext) -> None:
        _discover(ctx)
        indicators = sorted({ind for per in ctx.unary_values.values() for ind in per})
        if not indicators:
            raise MomoError("missing upstream artifact: no indicators-seed*.csv files; "
                            "configure a comparison listener in the runs")
        lines = []
        for ind in indicators:
            groups = [ctx.unary_values[a][ind] for a in ctx.algorithms
                      if ctx.unary_values[a].get(ind)]
            h, df, p = kruskal_wallis(groups)
            lines.append(f"indicator={ind} H={fmt(h)} df={df} p={fmt(p)}")
        path = ctx.report_dir / "kruskal.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")
        ctx.artifacts.append(path)


_HANDLERS = {
    "merge": MergeHandler,
    "reference": ReferenceHandler,
    "scale": ScaleHandler,
    "boxplots": BoxplotHandler,
    "parallel_coordinates": ParallelCoordinatesHandler,
    "indicators": IndicatorTableHandler,
    "kruskal": KruskalHandler,
}

DEFAULT_CHAIN = ("merge", "reference", "scale", "boxplots",
                 "parallel_coordinates", "indicators", "kruskal")


def handler_ids() -> list[str]:
    return sorted(_HANDLERS)


def build_chain(names) -> Handler:
    handlers = []
    for name in names:
        if name not in _HANDLERS:
            raise ConfigurationError(f"unknown post-processing handler '{name}'")
        handlers.append(_HANDLERS[name]())
    for left, right in zip(handlers, handlers[1:]):
        left.set_successor(right)
    return handlers[0]


def _discover(ctx: PipelineContext) -> None:
    """Load run fronts and per-run final unary indicator values once."""
    if ctx.algorithms:
        return
    root = ctx.experiment_dir
    if not root.is_dir():
        raise MomoError(f"experiment directory not found: {root}")
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        fronts = []
        for pf in sorted(sub.glob("pf-seed*.csv")):
            _, objs = read_front_csv(pf)
            fronts.append(objs)
        if not fronts:
            continue
        algo = sub.name
        ctx.algorithms.append(algo)
        ctx.run_fronts[algo] = fronts
        per_ind: dict[str, list[float]] = {}
        for path in sorted(sub.glob("indicators-seed*.csv")):
            header, last = _final_indicator_row(path)
            for name, value in zip(header[2:], last[2:]):
                per_ind.setdefault(name, []).append(value)
        ctx.unary_values[algo] = per_ind
    if not ctx.algorithms:
        raise MomoError(f"no run outputs (pf-seed*.csv) under {root}")


def _final_indicator_row(path: Path):
    lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
    header = lines[0].split(",")
    last = [float(tok) for tok in lines[-1].split(",")]
    return header, last


def _write_points_csv(points: np.ndarray, path: Path) -> None:
    points = np.asarray(points, dtype=np.float64)
    order = np.lexsort(points.T[::-1]) if len(points) else []
    header = ",".join(f"obj_{k}" for k in range(points.shape[1]))
    lines = [header] + [",".join(fmt(v) for v in points[i]) for i in order]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")


def run_pipeline(experiment_dir, chain: str = "default", out_dir=None,
                 maximize=None) -> Path:
    """Execute a handler chain over an experiment tree; returns the report dir.

    ``chain`` is either ``"default"`` or a comma-separated handler list.
    ``maximize`` optionally flags maximized objectives (all-minimize default).
    """
    experiment_dir = Path(experiment_dir)
    if not experiment_dir.is_dir():
        raise MomoError(f"experiment directory not found: {experiment_dir}")
    if out_dir is None:
        out_dir = experiment_dir.parent / "reports"
    report_dir = Path(out_dir) / experiment_dir.name
    report_dir.mkdir(parents=True, exist_ok=True)
    names = DEFAULT_CHAIN if chain == "default" else tuple(
        tok.strip() for tok in chain.split(",") if tok.strip())
    if not names:
        raise ConfigurationError("empty handler chain")
    sense = None
    if maximize is not None:
        sense = ObjectiveSense(maximize=tuple(bool(b) for b in maximize))
    ctx = PipelineContext(experiment_dir=experiment_dir, report_dir=report_dir,
                          sense=sense)
    build_chain(names).process(ctx)
    return report_dir
