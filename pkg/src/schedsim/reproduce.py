"""Built-in reproduction harness for the two published experiments.

The workloads are embedded so the checks cannot drift from the reference
tables. Each check compares one published (or rule-derived) value against the
simulated trace and prints a PASS or FAIL line.
"""

from dataclasses import dataclass
from fractions import Fraction

from .engine import merge_contiguous, simulate
from .metrics import MODE_PAPER, compute_metrics, format_exact
from .policies import POLICY_OMDRR, POLICY_RR_CYCLIC, PolicyConfig
from .workload import parse_workload

EXP_A = "expA"
EXP_B = "expB"
EXPERIMENTS = (EXP_A, EXP_B)

EXP_A_CSV = "pid,burst_ms\nP1,22\nP2,18\nP3,9\nP4,10\nP5,5\n"
EXP_B_CSV = (
    "pid,arrival_ms,burst_ms\n"
    "P1,0,4\n"
    "P2,2.4,7\n"
    "P3,5.1,5\n"
    "P4,6.2,8\n"
    "P5,8.019,9\n"
)

EXP_A_QUANTUM = 5000  # ticks
EXP_B_QUANTUM = 3000

EXP_A_RR_CELLS = (
    "P1 P2 P3 P4 P5 P1 P2 P3 P4 P1 P2 P1 P2 P1".split()
)
EXP_B_RR_CELLS = "P1 P2 P3 P4 P5 P1 P2 P3 P4 P5 P2 P4 P5".split()
EXP_B_OMDRR_CELLS = "P1 P2 P3 P4 P5 P3 P2 P4 P5".split()
EXP_B_OMDRR_BOUNDARIES_MS = (0, 4, 7, 10, 13, 16, 18, 22, 27, 33)

# The published Gantt for this experiment contradicts the algorithm's own
# sort rule (it dispatches the larger remaining burst first in round two),
# and the published averages do not follow from any reading of the rules.
# These are the rule-faithful values, confirmed by the per-tick interpreter.
EXP_A_OMDRR_CELLS = "P1 P2 P3 P4 P5 P3 P4 P2 P1".split()
EXP_A_OMDRR_COMPLETIONS_MS = {"P1": 64, "P2": 47, "P3": 29, "P4": 34, "P5": 25}
EXP_A_OMDRR_PUBLISHED_CLAIM = (9, "28.6", "41.4")  # switches, waiting, turnaround

EXPECTED = {
    (EXP_A, POLICY_RR_CYCLIC): {
        "cells": EXP_A_RR_CELLS,
        "context_switches": 13,
        "avg_waiting_ms": Fraction(34),
        "avg_turnaround_ms": Fraction(234, 5),  # 46.8
    },
    (EXP_A, POLICY_OMDRR): {
        "cells": EXP_A_OMDRR_CELLS,
        "context_switches": 8,
        "avg_waiting_ms": Fraction(27),
        "avg_turnaround_ms": Fraction(199, 5),  # 39.8
        "completions_ms": EXP_A_OMDRR_COMPLETIONS_MS,
    },
    (EXP_B, POLICY_RR_CYCLIC): {
        "cells": EXP_B_RR_CELLS,
        "context_switches": 12,
        "avg_waiting_ms": Fraction(19),
        "avg_turnaround_ms": Fraction(128, 5),  # 25.6
    },
    (EXP_B, POLICY_OMDRR): {
        "cells": EXP_B_OMDRR_CELLS,
        "context_switches": 8,
        "avg_waiting_ms": Fraction(71, 5),  # 14.2
        "avg_turnaround_ms": Fraction(104, 5),  # 20.8
        "boundaries_ms": EXP_B_OMDRR_BOUNDARIES_MS,
    },
}


@dataclass(frozen=True)
class CheckResult:
    label: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


def experiment_workload(experiment: str):
    if experiment == EXP_A:
        return parse_workload(EXP_A_CSV)
    if experiment == EXP_B:
        return parse_workload(EXP_B_CSV)
    raise ValueError(f"unknown experiment {experiment!r}")


def experiment_quantum(experiment: str) -> int:
    return EXP_A_QUANTUM if experiment == EXP_A else EXP_B_QUANTUM


def run_experiment_checks(experiment: str, sim=simulate) -> list[CheckResult]:
    workload = experiment_workload(experiment)
    quantum = experiment_quantum(experiment)
    results: list[CheckResult] = []
    reports = {}
    for policy in (POLICY_RR_CYCLIC, POLICY_OMDRR):
        config = PolicyConfig(policy, initial_quantum=quantum)
        trace = sim(workload, config)
        merged = merge_contiguous(trace)
        report = compute_metrics(trace, MODE_PAPER)
        reports[policy] = report
        expected = EXPECTED[(experiment, policy)]
        tag = f"{experiment} {policy}"
        results.append(CheckResult(
            f"{tag} gantt cells",
            " ".join(expected["cells"]),
            " ".join(s.pid for s in merged.slices),
        ))
        if "boundaries_ms" in expected:
            results.append(CheckResult(
                f"{tag} gantt boundaries (ms)",
                " ".join(str(b) for b in expected["boundaries_ms"]),
                " ".join(
                    format_exact(Fraction(t, 1000))
                    for t in [merged.slices[0].start] + [s.end for s in merged.slices]
                ),
            ))
        if "completions_ms" in expected:
            for pid, ms in expected["completions_ms"].items():
                results.append(CheckResult(
                    f"{tag} completion {pid} (ms)",
                    str(ms),
                    format_exact(Fraction(report.per_process[pid].completion, 1000)),
                ))
        results.append(CheckResult(
            f"{tag} context switches",
            str(expected["context_switches"]),
            str(report.context_switches),
        ))
        results.append(CheckResult(
            f"{tag} avg waiting (ms)",
            format_exact(expected["avg_waiting_ms"]),
            format_exact(report.avg_waiting_ms),
        ))
        results.append(CheckResult(
            f"{tag} avg turnaround (ms)",
            format_exact(expected["avg_turnaround_ms"]),
            format_exact(report.avg_turnaround_ms),
        ))
    rr, om = reports[POLICY_RR_CYCLIC], reports[POLICY_OMDRR]
    results.append(CheckResult(
        f"{experiment} omdrr beats rr on switches/waiting/turnaround",
        "True",
        str(
            om.context_switches < rr.context_switches
            and om.avg_waiting_ms < rr.avg_waiting_ms
            and om.avg_turnaround_ms < rr.avg_turnaround_ms
        ),
    ))
    return results


def deviation_note() -> str:
    switches, waiting, turnaround = EXP_A_OMDRR_PUBLISHED_CLAIM
    return (
        "note: the published expA figures for omdrr claim "
        f"{switches} context switches, avg waiting {waiting} ms, avg turnaround "
        f"{turnaround} ms. No consistent application of the policy's sort, "
        "continuation, and quantum-doubling rules produces those numbers; the "
        "values asserted above follow from the rules and are confirmed by the "
        "per-tick reference interpreter."
    )


def run_reproduction(experiment: str, out, sim=simulate) -> bool:
    """Run the checks for expA, expB, or all; print PASS/FAIL lines to `out`.
    Returns True when everything passed."""
    experiments = EXPERIMENTS if experiment == "all" else (experiment,)
    all_passed = True
    for exp in experiments:
        for check in run_experiment_checks(exp, sim=sim):
            if check.passed:
                out.write(f"PASS {check.label} = {check.actual}\n")
            else:
                all_passed = False
                out.write(
                    f"FAIL {check.label}: expected {check.expected}, got {check.actual}\n"
                )
        if exp == EXP_A:
            out.write(deviation_note() + "\n")
    return all_passed
