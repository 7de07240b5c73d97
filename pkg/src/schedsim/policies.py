"""Dispatch policies: FCFS, two round-robin variants, and the multilevel
dynamic round robin (omdrr) that sorts the ready queue by remaining work and
doubles the time quantum at every round boundary.
"""

from dataclasses import dataclass
from typing import NamedTuple

from .workload import WorkloadSpec

POLICY_FCFS = "fcfs"
POLICY_RR_FIFO = "rr-fifo"
POLICY_RR_CYCLIC = "rr-cyclic"
POLICY_OMDRR = "omdrr"
POLICIES = (POLICY_FCFS, POLICY_RR_FIFO, POLICY_RR_CYCLIC, POLICY_OMDRR)

FIRST_ROUND_ARRIVAL = "arrival"
FIRST_ROUND_SORTED = "sorted"

# overflow guard only; doubling past the largest remaining burst is inert
DEFAULT_QUANTUM_CAP = 1 << 40


class PolicyError(ValueError):
    """Invalid policy configuration."""


@dataclass(frozen=True)
class PolicyConfig:
    policy: str
    initial_quantum: int = 1  # ticks; ignored by fcfs
    first_round_order: str = FIRST_ROUND_ARRIVAL  # omdrr only
    quantum_cap: int = DEFAULT_QUANTUM_CAP

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise PolicyError(f"unknown policy {self.policy!r}")
        if self.policy != POLICY_FCFS and self.initial_quantum < 1:
            raise PolicyError("initial quantum must be at least 1 tick")
        if self.quantum_cap < self.initial_quantum:
            raise PolicyError("quantum cap must be at least the initial quantum")
        if self.first_round_order not in (FIRST_ROUND_ARRIVAL, FIRST_ROUND_SORTED):
            raise PolicyError(f"unknown first round order {self.first_round_order!r}")


class ReadyProcess(NamedTuple):
    """One arrived, unfinished process as seen at a dispatch decision."""

    pid: str
    remaining: int
    arrival: int
    input_index: int


@dataclass(frozen=True)
class DispatchDecision:
    """What to run next and for how long.

    The engine runs `pid` for min(budget, remaining). If work is left after a
    full budget and twice that leftover is strictly below
    `continue_threshold_x2`, the slice runs on to completion. The threshold is
    stored doubled so a half-quantum compares exactly in integer ticks; 0
    disables continuation.
    """

    pid: str
    budget: int
    continue_threshold_x2: int = 0


def sort_ready_queue(entries) -> list[str]:
    """Ascending by remaining work, ties by earlier arrival, then input order."""
    return [
        e.pid
        for e in sorted(entries, key=lambda e: (e.remaining, e.arrival, e.input_index))
    ]


class Policy:
    """Dispatch logic driven by the engine, one decision at a time."""

    def decide(self, now: int, ready: list[ReadyProcess]) -> DispatchDecision:
        raise NotImplementedError

    def on_busy_period_start(self, now: int) -> None:
        """Called when an idle gap ends and a fresh busy period begins."""


class FcfsPolicy(Policy):
    def decide(self, now, ready):
        head = min(ready, key=lambda e: (e.arrival, e.input_index))
        return DispatchDecision(head.pid, budget=head.remaining)


class RrFifoPolicy(Policy):
    """Textbook round robin: a preempted process re-enqueues at the tail,
    behind anything that arrived during its slice."""

    def __init__(self, quantum: int):
        self.quantum = quantum
        self._queue: list[str] = []
        self._seen: set[str] = set()
        self._last: str | None = None

    def decide(self, now, ready):
        alive = {e.pid for e in ready}
        newcomers = sorted(
            (e for e in ready if e.pid not in self._seen),
            key=lambda e: (e.arrival, e.input_index),
        )
        for e in newcomers:
            self._queue.append(e.pid)
            self._seen.add(e.pid)
        # admission first: a process arriving at the preemption instant queues
        # ahead of the process being re-enqueued
        if self._last is not None and self._last in alive:
            self._queue.append(self._last)
        pid = self._queue.pop(0)
        self._last = pid
        return DispatchDecision(pid, budget=self.quantum)


class RrCyclicPolicy(Policy):
    """Round robin over a fixed cyclic cursor in arrival order, skipping
    finished or not-yet-arrived processes."""

    def __init__(self, quantum: int, workload: WorkloadSpec):
        self.quantum = quantum
        procs = workload.processes
        self._ring = [
            procs[i].pid
            for i in sorted(range(len(procs)), key=lambda i: (procs[i].arrival, i))
        ]
        self._cursor = -1

    def decide(self, now, ready):
        alive = {e.pid for e in ready}
        size = len(self._ring)
        for step in range(1, size + 1):
            slot = (self._cursor + step) % size
            if self._ring[slot] in alive:
                self._cursor = slot
                return DispatchDecision(self._ring[slot], budget=self.quantum)
        raise PolicyError("no ready process in ring")


class OmdrrPolicy(Policy):
    """Multilevel dynamic round robin.

    Each round dispatches its queue once, shortest remaining work first
    (ties: earlier arrival, then input order). New arrivals always join the
    round in progress; a process preempted at quantum expiry waits for the
    next round, which starts once the current queue empties, with the quantum
    doubled and the survivors re-sorted. A process that exhausts its quantum
    with less than half a quantum of work left runs on to completion instead
    of being preempted.
    """

    def __init__(self, quantum: int, cap: int, first_round_order: str):
        self.initial_quantum = quantum
        self.quantum_cap = cap
        self.first_round_order = first_round_order
        self.round_index = 1
        self.current_quantum = quantum
        self._pending: list[str] = []
        self._known: set[str] = set()

    def on_busy_period_start(self, now):
        # doubling ages long jobs within a busy period; a fresh period starts fresh
        self.round_index = 1
        self.current_quantum = self.initial_quantum

    def decide(self, now, ready):
        # arrivals join the round in progress first; only when nothing is
        # left of that round do the survivors start the next one
        newcomers = [e for e in ready if e.pid not in self._known]
        self._admit(newcomers, ready)
        if not self._pending:
            self._next_round(ready)
        pid = self._pending.pop(0)
        return DispatchDecision(
            pid,
            budget=self.current_quantum,
            continue_threshold_x2=self.current_quantum,
        )

    def _next_round(self, survivors):
        self.round_index += 1
        self.current_quantum = min(self.current_quantum * 2, self.quantum_cap)
        self._pending = sort_ready_queue(survivors)

    def _admit(self, newcomers, ready):
        if not newcomers:
            return
        if self.round_index == 1 and self.first_round_order == FIRST_ROUND_ARRIVAL:
            self._pending.extend(
                e.pid
                for e in sorted(newcomers, key=lambda e: (e.arrival, e.input_index))
            )
        else:
            keys = {e.pid: (e.remaining, e.arrival, e.input_index) for e in ready}
            for e in sorted(newcomers, key=lambda e: (e.remaining, e.arrival, e.input_index)):
                key = keys[e.pid]
                pos = next(
                    (i for i, pid in enumerate(self._pending) if keys[pid] > key),
                    len(self._pending),
                )
                self._pending.insert(pos, e.pid)
        self._known.update(e.pid for e in newcomers)


def build_policy(config: PolicyConfig, workload: WorkloadSpec) -> Policy:
    if config.policy == POLICY_FCFS:
        return FcfsPolicy()
    if config.policy == POLICY_RR_FIFO:
        return RrFifoPolicy(config.initial_quantum)
    if config.policy == POLICY_RR_CYCLIC:
        return RrCyclicPolicy(config.initial_quantum, workload)
    return OmdrrPolicy(config.initial_quantum, config.quantum_cap, config.first_round_order)
