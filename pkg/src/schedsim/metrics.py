"""Scheduling criteria computed from a trace, with exact rational averages.

Two modes exist. In "standard" mode turnaround is completion minus arrival,
waiting is turnaround minus burst, and response is first dispatch minus
arrival. The "paper" mode treats every arrival as zero, which is how the
published reference averages were computed; the two coincide on zero-arrival
workloads.
"""

from dataclasses import dataclass
from fractions import Fraction

from .engine import ScheduleTrace, merge_contiguous
from .workload import TICKS_PER_MS, ticks_to_ms

MODE_STANDARD = "standard"
MODE_PAPER = "paper"
MODES = (MODE_STANDARD, MODE_PAPER)


class MetricsError(ValueError):
    """Metrics requested from an unusable trace."""


@dataclass(frozen=True)
class ProcessMetrics:
    completion: int  # ticks
    turnaround: int
    waiting: int
    response: int


@dataclass(frozen=True)
class MetricsReport:
    mode: str
    per_process: dict[str, ProcessMetrics]
    avg_waiting_ms: Fraction
    avg_turnaround_ms: Fraction
    avg_response_ms: Fraction
    context_switches: int
    throughput_per_ms: Fraction  # jobs per millisecond
    cpu_utilization: Fraction
    makespan: int  # ticks


def context_switches(trace: ScheduleTrace) -> int:
    """Adjacent distinct-pid pairs over merged slices; a pair across an idle
    gap counts only if the pids differ."""
    merged = merge_contiguous(trace).slices
    return sum(1 for a, b in zip(merged, merged[1:]) if a.pid != b.pid)


def compute_metrics(trace: ScheduleTrace, mode: str = MODE_STANDARD) -> MetricsReport:
    if mode not in MODES:
        raise MetricsError(f"unknown metrics mode {mode!r}")
    procs = trace.workload.processes
    if not procs:
        raise MetricsError("empty workload")
    executed: dict[str, int] = {}
    completion: dict[str, int] = {}
    first_dispatch: dict[str, int] = {}
    for s in trace.slices:
        executed[s.pid] = executed.get(s.pid, 0) + (s.end - s.start)
        completion[s.pid] = s.end
        first_dispatch.setdefault(s.pid, s.start)
    for p in procs:
        if executed.get(p.pid, 0) != p.burst:
            raise MetricsError(f"incomplete trace: {p.pid} has unfinished work")

    per_process: dict[str, ProcessMetrics] = {}
    for p in procs:
        base = 0 if mode == MODE_PAPER else p.arrival
        turnaround = completion[p.pid] - base
        per_process[p.pid] = ProcessMetrics(
            completion=completion[p.pid],
            turnaround=turnaround,
            waiting=turnaround - p.burst,
            response=first_dispatch[p.pid] - base,
        )

    n = len(procs)
    makespan = trace.makespan
    idle_total = sum(end - start for start, end in trace.idle_gaps)
    return MetricsReport(
        mode=mode,
        per_process=per_process,
        avg_waiting_ms=Fraction(sum(m.waiting for m in per_process.values()), n * TICKS_PER_MS),
        avg_turnaround_ms=Fraction(sum(m.turnaround for m in per_process.values()), n * TICKS_PER_MS),
        avg_response_ms=Fraction(sum(m.response for m in per_process.values()), n * TICKS_PER_MS),
        context_switches=context_switches(trace),
        throughput_per_ms=Fraction(n * TICKS_PER_MS, makespan),
        cpu_utilization=Fraction(makespan - idle_total, makespan),
        makespan=makespan,
    )


def format_exact(value) -> str:
    """Exact text form of a rational: a plain decimal when it terminates,
    `num/den` otherwise. Fraction() parses both back exactly."""
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    digits = max(twos, fives)
    scaled = num * 10**digits // den
    if digits == 0:
        return str(scaled)
    whole, frac = divmod(abs(scaled), 10**digits)
    sign = "-" if scaled < 0 else ""
    text = f"{sign}{whole}.{str(frac).zfill(digits)}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def report_to_json(report: MetricsReport) -> dict:
    return {
        "mode": report.mode,
        "per_process": {
            pid: {
                "completion_us": m.completion,
                "completion_ms": ticks_to_ms(m.completion),
                "turnaround_us": m.turnaround,
                "turnaround_ms": ticks_to_ms(m.turnaround),
                "waiting_us": m.waiting,
                "waiting_ms": ticks_to_ms(m.waiting),
                "response_us": m.response,
                "response_ms": ticks_to_ms(m.response),
            }
            for pid, m in report.per_process.items()
        },
        "aggregates": {
            "avg_waiting_ms": format_exact(report.avg_waiting_ms),
            "avg_turnaround_ms": format_exact(report.avg_turnaround_ms),
            "avg_response_ms": format_exact(report.avg_response_ms),
            "context_switches": report.context_switches,
            "throughput_per_ms": format_exact(report.throughput_per_ms),
            "utilization": format_exact(report.cpu_utilization),
            "makespan_us": report.makespan,
            "makespan_ms": ticks_to_ms(report.makespan),
        },
    }
