"""Post-processing pipeline: merged fronts, statistics, plots, reports."""

from .pipeline import (
    DEFAULT_CHAIN,
    Handler,
    PipelineContext,
    build_chain,
    handler_ids,
    merge_runs_pf,
    run_pipeline,
)
from .stats import kruskal_wallis, midranks
from .svgplot import boxplot_svg, emit_plot, parallel_coordinates_svg

__all__ = [
    "DEFAULT_CHAIN",
    "Handler",
    "PipelineContext",
    "boxplot_svg",
    "build_chain",
    "emit_plot",
    "handler_ids",
    "kruskal_wallis",
    "merge_runs_pf",
    "midranks",
    "parallel_coordinates_svg",
    "run_pipeline",
]
