"""Command-line entry point: run experiments, post-process, inspect registries.

Every invocation ends with a single machine-parsable ``status=...`` line on
stdout.  Exit codes: 0 success, 1 run failures, 2 usage/configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import MomoError
from .experiments import parse_config, run_experiment
from .indicators import indicator_ids
from .postprocess import handler_ids, run_pipeline
from .problems import make_problem, problem_ids, problem_params
from .strategies import strategy_ids, strategy_params
from .variation import OPERATORS, operator_ids


def status_line(**fields) -> None:
    """The single machine-parsable line every exit path prints last."""
    print(" ".join(f"{k}={v}" for k, v in fields.items()))


def _collect_configs(paths) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(p.glob("*.xml")))
        elif p.is_file():
            files.append(p)
        else:
            raise MomoError(f"no such file or directory: {p}")
    return files


def cmd_run(args) -> int:
    try:
        files = _collect_configs(args.paths)
        if not files:
            raise MomoError("no configuration files found")
        configs = [parse_config(f) for f in files]  # validate all before running any
    except MomoError as exc:
        print(f"error: {exc}")
        status_line(status="error", command="run", reason="configuration")
        return 2
    records = run_experiment(configs, args.out, parallel_runs=args.jobs)
    failed = [r for r in records if not r.ok]
    for r in records:
        marker = "ok" if r.ok else f"FAILED ({r.error})"
        print(f"run config={r.config_id} seed={r.seed} -> {marker}")
    status_line(status="error" if failed else "ok", command="run",
                runs=len(records), failed=len(failed), out=args.out)
    return 1 if failed else 0


def cmd_postprocess(args) -> int:
    maximize = None
    if args.maximize:
        try:
            maximize = [tok.strip().lower() in ("1", "true", "yes") for tok in args.maximize.split(",")]
        except ValueError:
            maximize = None
    try:
        report_dir = run_pipeline(args.experiment_dir, chain=args.chain,
                                  out_dir=args.out, maximize=maximize)
    except MomoError as exc:
        print(f"error: {exc}")
        status_line(status="error", command="postprocess", reason="pipeline")
        return 2
    status_line(status="ok", command="postprocess", report=str(report_dir))
    return 0


def cmd_list(args) -> int:
    kind = args.kind
    if kind == "strategies":
        for sid in strategy_ids():
            params = ",".join(sorted(strategy_params(sid))) or "-"
            print(f"{sid} params: {params}")
    elif kind == "problems":
        for pid in problem_ids():
            problem = make_problem(pid)
            params = ",".join(problem_params(pid)) or "-"
            print(f"{pid} objectives: {problem.m} params: {params}")
    elif kind == "indicators":
        for iid in indicator_ids():
            print(iid)
    elif kind == "operators":
        for oid in operator_ids():
            info = OPERATORS[oid]
            params = ",".join(info.params) or "-"
            print(f"{oid} kind: {info.kind} params: {params}")
    else:
        print(f"error: unknown kind '{kind}' "
              "(expected strategies, problems, indicators or operators)")
        status_line(status="error", command="list", reason="unknown-kind")
        return 2
    status_line(status="ok", command="list", kind=kind)
    return 0


def cmd_validate(args) -> int:
    try:
        files = _collect_configs(args.paths)
        if not files:
            raise MomoError("no configuration files found")
    except MomoError as exc:
        print(f"error: {exc}")
        status_line(status="error", command="validate", reason="paths")
        return 2
    bad = 0
    for f in files:
        try:
            parse_config(f)
            print(f"valid: {f}")
        except MomoError as exc:
            bad += 1
            print(f"invalid: {f}: {exc}")
    status_line(status="error" if bad else "ok", command="validate",
                checked=len(files), invalid=bad)
    return 2 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momo",
        description="Multi- and many-objective metaheuristic optimization toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute experiment configuration files")
    p_run.add_argument("paths", nargs="+", help="config files or directories of *.xml")
    p_run.add_argument("--out", default="results", help="output directory root")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel run workers")
    p_run.set_defaults(fn=cmd_run)

    p_post = sub.add_parser("postprocess", help="run the analysis pipeline")
    p_post.add_argument("experiment_dir", help="experiment output tree (<out>/<title>)")
    p_post.add_argument("--chain", default="default",
                        help="'default' or comma-separated handlers: "
                             + ",".join(handler_ids()))
    p_post.add_argument("--out", default=None, help="report directory root")
    p_post.add_argument("--maximize", default=None,
                        help="comma-separated true/false per objective")
    p_post.set_defaults(fn=cmd_postprocess)

    p_list = sub.add_parser("list", help="print registry contents")
    p_list.add_argument("kind", help="strategies | problems | indicators | operators")
    p_list.set_defaults(fn=cmd_list)

    p_val = sub.add_parser("validate", help="parse configs without executing")
    p_val.add_argument("paths", nargs="+")
    p_val.set_defaults(fn=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except MomoError as exc:
        print(f"error: {exc}")
        status_line(status="error", command=args.command, reason="unexpected")
        return 2


if __name__ == "__main__":
    sys.exit(main())
