"""Deterministic dispatch loop driving a policy over a workload.

The engine advances from decision point to decision point: it asks the policy
what to run, executes the slice in one step, and records it. The per-tick
reference interpreter lives in `oracle` and must produce identical merged
traces.
"""

import json
from dataclasses import dataclass, replace

from .policies import PolicyConfig, ReadyProcess, build_policy
from .workload import WorkloadSpec

END_COMPLETED = "completed"
END_QUANTUM_EXPIRED = "quantum_expired"
END_CONTINUED = "continued_to_completion"


class EngineInvariantError(RuntimeError):
    """A trace or dispatch violated an engine invariant."""


@dataclass(frozen=True)
class Slice:
    """One contiguous CPU occupancy by one process."""

    pid: str
    start: int
    end: int
    end_reason: str


@dataclass(frozen=True)
class ScheduleTrace:
    slices: tuple[Slice, ...]
    idle_gaps: tuple[tuple[int, int], ...]
    workload: WorkloadSpec
    config: PolicyConfig

    @property
    def makespan(self) -> int:
        return self.slices[-1].end if self.slices else 0


def simulate(
    workload: WorkloadSpec,
    config: PolicyConfig,
    *,
    switch_cost: int = 0,
    on_decision=None,
) -> ScheduleTrace:
    """Run `workload` under `config` and return the exact schedule trace.

    A process arriving exactly at a decision boundary is ready at that
    instant. When nothing is ready but work is pending, an idle gap is
    recorded up to the next arrival and the policy is told a new busy period
    begins. `switch_cost` > 0 records the dispatch latency between distinct
    processes as extra gaps; it is outside the zero-cost trace contract and
    defaults to 0. `on_decision(now, decision)` is invoked per dispatch when
    given (instrumentation for tests and debugging).
    """
    policy = build_policy(config, workload)
    procs = workload.processes
    n = len(procs)
    remaining = [p.burst for p in procs]
    index_of = {p.pid: i for i, p in enumerate(procs)}
    slices: list[Slice] = []
    gaps: list[tuple[int, int]] = []
    now = 0
    done = 0
    prev_pid = None
    while done < n:
        ready = [
            ReadyProcess(p.pid, remaining[i], p.arrival, i)
            for i, p in enumerate(procs)
            if remaining[i] > 0 and p.arrival <= now
        ]
        if not ready:
            next_arrival = min(p.arrival for i, p in enumerate(procs) if remaining[i] > 0)
            gaps.append((now, next_arrival))
            now = next_arrival
            policy.on_busy_period_start(now)
            continue
        decision = policy.decide(now, ready)
        i = index_of.get(decision.pid, -1)
        if i < 0 or remaining[i] <= 0 or procs[i].arrival > now:
            raise EngineInvariantError(
                f"policy dispatched {decision.pid!r} at t={now}, which is not ready"
            )
        if decision.budget <= 0:
            raise EngineInvariantError("dispatch budget must be positive")
        if on_decision is not None:
            on_decision(now, decision)
        if switch_cost and prev_pid is not None and prev_pid != decision.pid:
            gaps.append((now, now + switch_cost))
            now += switch_cost
        run = min(decision.budget, remaining[i])
        end = now + run
        left = remaining[i] - run
        if left > 0 and 2 * left < decision.continue_threshold_x2:
            end += left
            left = 0
            reason = END_CONTINUED
        elif left == 0:
            reason = END_COMPLETED
        else:
            reason = END_QUANTUM_EXPIRED
        slices.append(Slice(decision.pid, now, end, reason))
        remaining[i] = left
        if left == 0:
            done += 1
        prev_pid = decision.pid
        now = end
    return ScheduleTrace(tuple(slices), tuple(gaps), workload, config)


def merge_contiguous(trace: ScheduleTrace) -> ScheduleTrace:
    """Merge same-pid slices with touching endpoints; one merged slice per
    Gantt cell. The merged end reason is the last constituent's."""
    merged: list[Slice] = []
    for s in trace.slices:
        if merged and merged[-1].pid == s.pid and merged[-1].end == s.start:
            merged[-1] = Slice(s.pid, merged[-1].start, s.end, s.end_reason)
        else:
            merged.append(s)
    return replace(trace, slices=tuple(merged))


def validate_trace(trace: ScheduleTrace) -> None:
    """Check the zero-cost trace invariants; raise EngineInvariantError on
    the first violation.

    Checked: slices and idle gaps are disjoint, sorted, and tile
    [0, makespan]; per-process slice durations sum to the burst; no slice
    starts before its process arrives; the CPU never idles while an arrived
    process has remaining work.
    """
    procs = {p.pid: p for p in trace.workload.processes}
    executed = {pid: 0 for pid in procs}
    for s in trace.slices:
        if s.pid not in procs:
            raise EngineInvariantError(f"slice for unknown pid {s.pid!r}")
        if s.start < procs[s.pid].arrival:
            raise EngineInvariantError(
                f"{s.pid} runs at {s.start} before its arrival {procs[s.pid].arrival}"
            )
        if s.end_reason not in (END_COMPLETED, END_QUANTUM_EXPIRED, END_CONTINUED):
            raise EngineInvariantError(f"unknown end reason {s.end_reason!r}")
        executed[s.pid] += s.end - s.start
    for pid, p in procs.items():
        if executed[pid] != p.burst:
            raise EngineInvariantError(
                f"{pid} executed {executed[pid]} ticks, burst is {p.burst}"
            )

    intervals = [(s.start, s.end, s.pid) for s in trace.slices]
    intervals += [(g[0], g[1], None) for g in trace.idle_gaps]
    intervals.sort(key=lambda iv: iv[0])
    cursor = 0
    for start, end, _pid in intervals:
        if start >= end:
            raise EngineInvariantError(f"empty or inverted interval [{start}, {end})")
        if start != cursor:
            raise EngineInvariantError(
                f"trace does not tile time: expected next interval at {cursor}, got {start}"
            )
        cursor = end
    if trace.slices and cursor != trace.makespan:
        raise EngineInvariantError("trace extends past the last slice")

    # busy-period non-idling: during a gap no arrived process may have work left
    work_before: list[tuple[int, str, int]] = [
        (s.start, s.pid, s.end - s.start) for s in trace.slices
    ]
    for g_start, g_end in trace.idle_gaps:
        for pid, p in procs.items():
            if p.burst <= 0:
                continue
            executed_before = sum(d for t, q, d in work_before if q == pid and t < g_start)
            if p.arrival <= g_start and executed_before < p.burst:
                raise EngineInvariantError(
                    f"idle at [{g_start}, {g_end}) while {pid} is ready with work left"
                )
            if g_start < p.arrival < g_end:
                raise EngineInvariantError(
                    f"idle gap [{g_start}, {g_end}) overlaps arrival of {pid}"
                )


def trace_to_json(trace: ScheduleTrace) -> dict:
    return {
        "slices": [
            {"pid": s.pid, "start_us": s.start, "end_us": s.end, "end_reason": s.end_reason}
            for s in trace.slices
        ],
        "idle": [{"start_us": g[0], "end_us": g[1]} for g in trace.idle_gaps],
    }


def trace_json_text(trace: ScheduleTrace) -> str:
    """Canonical serialized form; byte-identical for identical traces."""
    return json.dumps(trace_to_json(trace), separators=(",", ":"))
