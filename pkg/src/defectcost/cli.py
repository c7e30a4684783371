"""Command-line interface.

Exit codes: 0 on success, 1 on data or domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .boundaries import boundary_interval
from .costs import KIND_BY_CODE, CostParams, cost_init, cost_random
from .errors import DataError
from .io import parse_matrix, parse_prediction, summarize
from .model import classify, project_view
from .reporting import METRICS, emit_records, parse_records, render_scatter
from .simulation import GridConfig, run_grid

KIND_CODES = tuple(KIND_BY_CODE)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_view(args) -> tuple:
    kind = KIND_BY_CODE[args.kind]
    project = parse_matrix(_read(args.matrix), project_id=Path(args.matrix).stem)
    view = project_view(project, kind.relationship)
    prediction = parse_prediction(_read(args.predictions), view)
    outcome = classify(view, prediction)
    return kind, view, outcome


def _cmd_validate(args) -> int:
    project = parse_matrix(_read(args.matrix), project_id=Path(args.matrix).stem)
    stats = summarize(project)
    print(
        f"valid: artifacts={stats.n_artifacts} defective={stats.n_defective} "
        f"defects={stats.n_defects}"
    )
    return 0


def _cmd_summarize(args) -> int:
    stats = summarize(parse_matrix(_read(args.matrix), project_id=Path(args.matrix).stem))
    print(
        f"artifacts={stats.n_artifacts} defective={stats.n_defective} "
        f"defects={stats.n_defects} mean_members={stats.mean_members:g} "
        f"mean_size={stats.mean_size:g}"
    )
    return 0


def _cmd_cost(args) -> int:
    kind, view, outcome = _load_view(args)
    params = CostParams(
        c_ratio=args.c_ratio,
        p_qf=args.p_qf,
        c_init=args.c_init,
        c_exec=args.c_exec,
        qa_mode=kind.qa_mode,
    )
    cost = cost_init(view, outcome, params, kind)
    no_qa = cost_random(view, 0.0, params)
    all_qa = cost_random(view, 1.0, params)
    print(f"cost={cost:g}")
    print(f"baseline_no_qa={no_qa:g} profit_vs_no_qa={no_qa - cost:g}")
    print(f"baseline_full_qa={all_qa:g} profit_vs_full_qa={all_qa - cost:g}")
    return 0


def _cmd_boundaries(args) -> int:
    kind, view, outcome = _load_view(args)
    params = CostParams(p_qf=args.p_qf, qa_mode=kind.qa_mode)
    interval = boundary_interval(view, outcome, params, kind)
    saving = "true" if interval.cost_saving_possible else "false"
    print(f"lower={interval.lower:g} upper={interval.upper:g} cost_saving={saving}")
    return 0


def _cmd_simulate(args) -> int:
    project = parse_matrix(_read(args.matrix), project_id=Path(args.matrix).stem)
    accuracies = []
    value = args.acc_min
    while value <= args.acc_max + 1e-9:
        accuracies.append(round(value, 10))
        value += args.acc_step
    config = GridConfig(
        accuracies=tuple(accuracies),
        repetitions=args.reps,
        p_qf_values=tuple(args.p_qf) if args.p_qf else (0.0, 0.5),
        seed=args.seed,
    )
    text = emit_records(run_grid(project, config, workers=args.workers), format="csv")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_plot(args) -> int:
    records = parse_records(_read(getattr(args, "in")), format="csv")
    svg = render_scatter(records, metric=args.metric, kind=KIND_BY_CODE[args.kind])
    Path(args.out).write_text(svg, encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defectcost",
        description="Costs, profit, and cost-saving boundaries of defect prediction models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a defect matrix and report its invariants")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("summarize", help="print aggregate statistics of a defect matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("cost", help="cost of a prediction and profit against both baselines")
    p.add_argument("--matrix", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--kind", required=True, choices=KIND_CODES)
    p.add_argument("--c-ratio", type=float, required=True)
    p.add_argument("--p-qf", type=float, default=0.0)
    p.add_argument("--c-init", type=float, default=0.0)
    p.add_argument("--c-exec", type=float, default=0.0)
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("boundaries", help="cost-saving boundary interval of a prediction")
    p.add_argument("--matrix", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--kind", required=True, choices=KIND_CODES)
    p.add_argument("--p-qf", type=float, default=0.0)
    p.set_defaults(func=_cmd_boundaries)

    p = sub.add_parser("simulate", help="run the accuracy-grid simulation, write record CSV")
    p.add_argument("--matrix", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--acc-min", type=float, default=0.05)
    p.add_argument("--acc-max", type=float, default=0.95)
    p.add_argument("--acc-step", type=float, default=0.05)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--p-qf", type=float, action="append")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("plot", help="render an SVG scatter of boundaries against a metric")
    p.add_argument("--in", required=True)
    p.add_argument("--metric", required=True, choices=METRICS)
    p.add_argument("--kind", required=True, choices=KIND_CODES)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)

    return parser


def cli_dispatch(argv) -> int:
    """Run one CLI invocation and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    try:
        return args.func(args)
    except DataError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
