"""Deterministic CPU-scheduling simulator with exact tick arithmetic.

Policies: fcfs, rr-fifo, rr-cyclic, and omdrr (multilevel dynamic round
robin: ready queue sorted by remaining work, quantum doubled every round,
run-to-completion when less than half a quantum remains). The
`schedsim.oracle` module holds a per-tick reference interpreter; import it
directly (it compiles its kernels on first use).
"""

from .engine import (
    END_COMPLETED,
    END_CONTINUED,
    END_QUANTUM_EXPIRED,
    EngineInvariantError,
    ScheduleTrace,
    Slice,
    merge_contiguous,
    simulate,
    trace_json_text,
    trace_to_json,
    validate_trace,
)
from .metrics import (
    MODE_PAPER,
    MODE_STANDARD,
    MetricsError,
    MetricsReport,
    compute_metrics,
    context_switches,
    format_exact,
    report_to_json,
)
from .policies import (
    DispatchDecision,
    POLICIES,
    POLICY_FCFS,
    POLICY_OMDRR,
    POLICY_RR_CYCLIC,
    POLICY_RR_FIFO,
    PolicyConfig,
    PolicyError,
    ReadyProcess,
    build_policy,
    sort_ready_queue,
)
from .report import ComparisonTable, render_comparison, render_gantt_text
from .workload import (
    GeneratorParams,
    ProcessSpec,
    WorkloadError,
    WorkloadSpec,
    export_workload,
    generate_random,
    ms_to_ticks,
    parse_workload,
    ticks_to_ms,
)

__version__ = "0.1.0"
