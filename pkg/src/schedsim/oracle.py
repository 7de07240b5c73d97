"""Per-tick reference interpreter used as an oracle for the dispatch engine.

Unlike the event-driven engine, this interpreter advances time one tick at a
time, re-checking arrival admission, quantum exhaustion, and the
run-to-completion rule at every tick. It shares no dispatch code with the
engine; after merging contiguous slices both must produce identical traces.

The tick loops are compiled with numba: a tick is one microsecond, so a
modest workload corpus spans billions of ticks and a pure-Python loop would
take minutes.
"""

import numpy as np
from numba import njit

from .engine import END_COMPLETED, END_CONTINUED, END_QUANTUM_EXPIRED, ScheduleTrace, Slice
from .policies import (
    FIRST_ROUND_SORTED,
    POLICY_FCFS,
    POLICY_OMDRR,
    POLICY_RR_CYCLIC,
    PolicyConfig,
)
from .workload import WorkloadSpec

_REASONS = (END_COMPLETED, END_QUANTUM_EXPIRED, END_CONTINUED)


@njit(cache=True)
def _sorts_after(rem_a, arr_a, idx_a, rem_b, arr_b, idx_b):
    # lexicographic (remaining, arrival, input index)
    if rem_a != rem_b:
        return rem_a > rem_b
    if arr_a != arr_b:
        return arr_a > arr_b
    return idx_a > idx_b


@njit(cache=True)
def _rr_fifo_ticks(arrival, burst, adm_order, quantum,
                   s_pid, s_start, s_end, s_reason, g_start, g_end):
    n = arrival.shape[0]
    rem = burst.copy()
    queue = np.empty(n, np.int64)
    qlen = 0
    adm = 0
    requeue = -1
    running = -1
    used = 0
    slice_start = 0
    sc = 0
    gc = 0
    idle_from = -1
    finished = 0
    now = 0
    while finished < n:
        while adm < n and arrival[adm_order[adm]] <= now:
            queue[qlen] = adm_order[adm]
            qlen += 1
            adm += 1
        # a process arriving at the preemption instant queues ahead of the
        # process being put back
        if requeue >= 0:
            queue[qlen] = requeue
            qlen += 1
            requeue = -1
        if running < 0:
            if qlen == 0:
                if idle_from < 0:
                    idle_from = now
                now += 1
                continue
            if idle_from >= 0:
                g_start[gc] = idle_from
                g_end[gc] = now
                gc += 1
                idle_from = -1
            running = queue[0]
            for i in range(1, qlen):
                queue[i - 1] = queue[i]
            qlen -= 1
            used = 0
            slice_start = now
        rem[running] -= 1
        used += 1
        now += 1
        if rem[running] == 0:
            s_pid[sc] = running
            s_start[sc] = slice_start
            s_end[sc] = now
            s_reason[sc] = 0
            sc += 1
            running = -1
            finished += 1
        elif used >= quantum:
            s_pid[sc] = running
            s_start[sc] = slice_start
            s_end[sc] = now
            s_reason[sc] = 1
            sc += 1
            requeue = running
            running = -1
    return sc, gc


@njit(cache=True)
def _rr_cyclic_ticks(arrival, burst, ring, quantum,
                     s_pid, s_start, s_end, s_reason, g_start, g_end):
    n = arrival.shape[0]
    rem = burst.copy()
    arrived = np.zeros(n, np.bool_)
    adm = 0
    cursor = -1
    running = -1
    used = 0
    slice_start = 0
    sc = 0
    gc = 0
    idle_from = -1
    finished = 0
    now = 0
    while finished < n:
        while adm < n and arrival[ring[adm]] <= now:
            arrived[ring[adm]] = True
            adm += 1
        if running < 0:
            sel = -1
            for step in range(1, n + 1):
                slot = (cursor + step) % n
                j = ring[slot]
                if arrived[j] and rem[j] > 0:
                    sel = slot
                    break
            if sel < 0:
                if idle_from < 0:
                    idle_from = now
                now += 1
                continue
            if idle_from >= 0:
                g_start[gc] = idle_from
                g_end[gc] = now
                gc += 1
                idle_from = -1
            cursor = sel
            running = ring[sel]
            used = 0
            slice_start = now
        rem[running] -= 1
        used += 1
        now += 1
        if rem[running] == 0:
            s_pid[sc] = running
            s_start[sc] = slice_start
            s_end[sc] = now
            s_reason[sc] = 0
            sc += 1
            running = -1
            finished += 1
        elif used >= quantum:
            s_pid[sc] = running
            s_start[sc] = slice_start
            s_end[sc] = now
            s_reason[sc] = 1
            sc += 1
            running = -1
    return sc, gc


@njit(cache=True)
def _omdrr_ticks(arrival, burst, adm_order, quantum, cap, sorted_first,
                 s_pid, s_start, s_end, s_reason, g_start, g_end):
    n = arrival.shape[0]
    rem = burst.copy()
    arrived = np.zeros(n, np.bool_)
    known = np.zeros(n, np.bool_)
    pending = np.empty(n, np.int64)
    plen = 0
    adm = 0
    tq = quantum
    round_no = 1
    running = -1
    used = 0
    committed = False
    slice_start = 0
    sc = 0
    gc = 0
    idle_from = -1
    finished = 0
    now = 0
    while finished < n:
        while adm < n and arrival[adm_order[adm]] <= now:
            arrived[adm_order[adm]] = True
            adm += 1
        if running < 0:
            ready_exists = False
            for j in range(n):
                if arrived[j] and rem[j] > 0:
                    ready_exists = True
                    break
            if not ready_exists:
                if idle_from < 0:
                    idle_from = now
                now += 1
                continue
            if idle_from >= 0:
                g_start[gc] = idle_from
                g_end[gc] = now
                gc += 1
                idle_from = -1
                # a fresh busy period starts over at the initial quantum
                tq = quantum
                round_no = 1
            # arrivals join the round in progress first; only when nothing is
            # left of that round do the survivors start the next one
            plen = _omdrr_admit(arrival, rem, adm_order, arrived, known,
                                pending, plen, round_no, sorted_first)
            if plen == 0:
                round_no += 1
                tq = tq * 2 if tq * 2 < cap else cap
                for j in range(n):
                    if arrived[j] and rem[j] > 0:
                        pos = plen
                        for i in range(plen):
                            q = pending[i]
                            if _sorts_after(rem[q], arrival[q], q,
                                            rem[j], arrival[j], j):
                                pos = i
                                break
                        for i in range(plen, pos, -1):
                            pending[i] = pending[i - 1]
                        pending[pos] = j
                        plen += 1
            running = pending[0]
            for i in range(1, plen):
                pending[i - 1] = pending[i]
            plen -= 1
            used = 0
            committed = False
            slice_start = now
        rem[running] -= 1
        used += 1
        now += 1
        if rem[running] == 0:
            s_pid[sc] = running
            s_start[sc] = slice_start
            s_end[sc] = now
            s_reason[sc] = 2 if committed else 0
            sc += 1
            running = -1
            finished += 1
        elif used >= tq and not committed:
            if 2 * rem[running] < tq:
                committed = True
            else:
                s_pid[sc] = running
                s_start[sc] = slice_start
                s_end[sc] = now
                s_reason[sc] = 1
                sc += 1
                running = -1
    return sc, gc


@njit(cache=True)
def _omdrr_admit(arrival, rem, adm_order, arrived, known, pending, plen,
                 round_no, sorted_first):
    if round_no == 1 and not sorted_first:
        # first round keeps submission order: append by (arrival, input index)
        for k in range(adm_order.shape[0]):
            j = adm_order[k]
            if arrived[j] and rem[j] > 0 and not known[j]:
                pending[plen] = j
                plen += 1
                known[j] = True
    else:
        for j in range(arrival.shape[0]):
            if arrived[j] and rem[j] > 0 and not known[j]:
                pos = plen
                for i in range(plen):
                    q = pending[i]
                    if _sorts_after(rem[q], arrival[q], q, rem[j], arrival[j], j):
                        pos = i
                        break
                for i in range(plen, pos, -1):
                    pending[i] = pending[i - 1]
                pending[pos] = j
                plen += 1
                known[j] = True
    return plen


def oracle_simulate(workload: WorkloadSpec, config: PolicyConfig) -> ScheduleTrace:
    """Simulate by brute-force tick stepping; must match `simulate` after
    merging contiguous slices."""
    procs = workload.processes
    n = len(procs)
    if n == 0:
        return ScheduleTrace((), (), workload, config)
    arrival = np.array([p.arrival for p in procs], dtype=np.int64)
    burst = np.array([p.burst for p in procs], dtype=np.int64)
    adm_order = np.array(
        sorted(range(n), key=lambda i: (procs[i].arrival, i)), dtype=np.int64
    )
    total = int(burst.sum())
    if config.policy == POLICY_FCFS:
        quantum = total + 1  # never expires: FCFS runs to completion
        max_slices = n + 1
    else:
        quantum = config.initial_quantum
        max_slices = total // quantum + n + 2
    s_pid = np.empty(max_slices, dtype=np.int64)
    s_start = np.empty(max_slices, dtype=np.int64)
    s_end = np.empty(max_slices, dtype=np.int64)
    s_reason = np.empty(max_slices, dtype=np.int64)
    g_start = np.empty(n + 1, dtype=np.int64)
    g_end = np.empty(n + 1, dtype=np.int64)

    if config.policy == POLICY_RR_CYCLIC:
        sc, gc = _rr_cyclic_ticks(arrival, burst, adm_order, quantum,
                                  s_pid, s_start, s_end, s_reason, g_start, g_end)
    elif config.policy == POLICY_OMDRR:
        sc, gc = _omdrr_ticks(arrival, burst, adm_order, quantum,
                              config.quantum_cap,
                              config.first_round_order == FIRST_ROUND_SORTED,
                              s_pid, s_start, s_end, s_reason, g_start, g_end)
    else:
        sc, gc = _rr_fifo_ticks(arrival, burst, adm_order, quantum,
                                s_pid, s_start, s_end, s_reason, g_start, g_end)

    slices = tuple(
        Slice(procs[int(s_pid[i])].pid, int(s_start[i]), int(s_end[i]),
              _REASONS[int(s_reason[i])])
        for i in range(sc)
    )
    gaps = tuple((int(g_start[i]), int(g_end[i])) for i in range(gc))
    return ScheduleTrace(slices, gaps, workload, config)
