"""Command-line front end: run one policy, compare several, reproduce the
built-in experiments, or generate random workloads.

Exit codes: 0 success, 1 internal invariant failure or reproduction
mismatch, 2 bad input. Setting SCHEDSIM_ORACLE=1 swaps the event-driven
engine for the per-tick reference interpreter (differential debugging).
"""

import argparse
import os
import sys
from pathlib import Path

from . import reproduce as repro
from .engine import EngineInvariantError, simulate, trace_to_json
from .metrics import MODES, MODE_STANDARD, compute_metrics, format_exact, report_to_json
from .policies import (
    FIRST_ROUND_ARRIVAL,
    FIRST_ROUND_SORTED,
    POLICIES,
    POLICY_FCFS,
    PolicyConfig,
)
from .report import ComparisonTable, render_comparison, render_gantt_text
from .workload import (
    ARRIVAL_ALL_ZERO,
    ARRIVAL_UNIFORM_WINDOW,
    GeneratorParams,
    WorkloadError,
    export_workload,
    generate_random,
    ms_to_ticks,
    parse_workload,
    ticks_to_ms,
)


def _simulator():
    if os.environ.get("SCHEDSIM_ORACLE") == "1":
        from .oracle import oracle_simulate

        return oracle_simulate
    return simulate


def _load_workload(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise WorkloadError(f"cannot read {path}: {exc}") from None
    fmt = "json" if path.endswith(".json") else "csv"
    return parse_workload(text, fmt)


def _policy_config(args, policy: str) -> PolicyConfig:
    if policy == POLICY_FCFS:
        return PolicyConfig(policy)
    if args.quantum is None:
        raise WorkloadError(f"policy {policy!r} requires --quantum")
    quantum = ms_to_ticks(args.quantum)
    if quantum < 1:
        raise WorkloadError("--quantum must be at least 0.001 ms")
    return PolicyConfig(
        policy,
        initial_quantum=quantum,
        first_round_order=args.first_round_order,
    )


def _print_run(workload, trace, report, fmt, out, raw=False):
    if fmt == "json":
        import json

        out.write(json.dumps(
            {"trace": trace_to_json(trace), "metrics": report_to_json(report)},
            separators=(",", ":"),
        ) + "\n")
        return
    if fmt == "csv":
        table = ComparisonTable(((trace.config.policy, report),), workload.label)
        out.write(render_comparison(table, "csv"))
        return
    out.write(render_gantt_text(trace, merged=not raw) + "\n")
    out.write(f"pid  completion_ms  turnaround_ms  waiting_ms  response_ms\n")
    for pid, m in report.per_process.items():
        out.write(
            f"{pid}  {ticks_to_ms(m.completion)}  {ticks_to_ms(m.turnaround)}  "
            f"{ticks_to_ms(m.waiting)}  {ticks_to_ms(m.response)}\n"
        )
    out.write(f"context_switches: {report.context_switches}\n")
    out.write(f"avg_waiting_ms: {format_exact(report.avg_waiting_ms)}\n")
    out.write(f"avg_turnaround_ms: {format_exact(report.avg_turnaround_ms)}\n")
    out.write(f"avg_response_ms: {format_exact(report.avg_response_ms)}\n")
    out.write(f"throughput_per_ms: {format_exact(report.throughput_per_ms)}\n")
    out.write(f"utilization: {format_exact(report.cpu_utilization)}\n")


def _cmd_run(args, out) -> int:
    workload = _load_workload(args.workload)
    config = _policy_config(args, args.policy)
    trace = _simulator()(workload, config)
    report = compute_metrics(trace, args.mode)
    _print_run(workload, trace, report, args.format, out, raw=args.raw)
    return 0


def _cmd_compare(args, out) -> int:
    workload = _load_workload(args.workload)
    policies = [p.strip() for p in args.policies.split(",") if p.strip()]
    if not policies:
        raise WorkloadError("--policies must name at least one policy")
    for p in policies:
        if p not in POLICIES:
            raise WorkloadError(f"unknown policy {p!r}")
    sim = _simulator()
    rows = []
    for policy in policies:
        config = _policy_config(args, policy)
        trace = sim(workload, config)
        rows.append((policy, compute_metrics(trace, args.mode)))
    table = ComparisonTable(tuple(rows), workload.label or args.workload)
    out.write(render_comparison(table, args.format))
    return 0


def _cmd_reproduce(args, out) -> int:
    ok = repro.run_reproduction(args.experiment, out, sim=_simulator())
    return 0 if ok else 1


def _cmd_generate(args, out) -> int:
    if args.arrival_window_ms is None:
        mode, window = ARRIVAL_ALL_ZERO, 0
    else:
        mode, window = ARRIVAL_UNIFORM_WINDOW, ms_to_ticks(args.arrival_window_ms)
    params = GeneratorParams(
        count=args.count,
        max_burst=ms_to_ticks(args.max_burst_ms),
        arrival_mode=mode,
        arrival_window=window,
        seed=args.seed,
    )
    out.write(export_workload(generate_random(params), "csv"))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schedsim",
        description="Deterministic CPU-scheduling simulator with a dynamic-quantum "
        "round-robin policy, classic round robin, and FCFS.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_policy_flags(p, many=False):
        if many:
            p.add_argument("--policies", required=True,
                           help="comma-separated policy list, e.g. rr-cyclic,omdrr")
        else:
            p.add_argument("--policy", required=True, choices=POLICIES)
        p.add_argument("--quantum", metavar="MS",
                       help="time quantum in decimal ms (rr-* and omdrr)")
        p.add_argument("--mode", choices=MODES, default=MODE_STANDARD)
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--first-round-order",
                       choices=(FIRST_ROUND_ARRIVAL, FIRST_ROUND_SORTED),
                       default=FIRST_ROUND_ARRIVAL,
                       help="omdrr first-round dispatch order")

    p_run = sub.add_parser("run", help="simulate one policy and print Gantt plus metrics")
    p_run.add_argument("workload", help="workload file (.csv or .json)")
    add_policy_flags(p_run)
    p_run.add_argument("--raw", action="store_true",
                       help="show unmerged dispatch slices, including continuation boundaries")
    p_run.set_defaults(handler=_cmd_run)

    p_cmp = sub.add_parser("compare", help="run several policies on one workload")
    p_cmp.add_argument("workload")
    add_policy_flags(p_cmp, many=True)
    p_cmp.set_defaults(handler=_cmd_compare)

    p_rep = sub.add_parser("reproduce",
                           help="check the built-in experiments against their reference values")
    p_rep.add_argument("experiment", choices=(*repro.EXPERIMENTS, "all"))
    p_rep.set_defaults(handler=_cmd_reproduce)

    p_gen = sub.add_parser("generate", help="emit a random workload as CSV")
    p_gen.add_argument("--count", type=int, required=True)
    p_gen.add_argument("--max-burst-ms", required=True, metavar="MS")
    p_gen.add_argument("--arrival-window-ms", metavar="MS",
                       help="uniform arrival window; omit for all-zero arrivals")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.set_defaults(handler=_cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        return args.handler(args, out)
    except WorkloadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
