"""Process workloads with exact fixed-point time arithmetic.

All times are integer microsecond ticks (1 ms = 1000 ticks). Decimal
millisecond input with up to 3 fractional digits converts exactly, so no
floating-point time exists anywhere downstream.
"""

import json
import random
import re
from dataclasses import dataclass

TICKS_PER_MS = 1000

ARRIVAL_ALL_ZERO = "all-zero"
ARRIVAL_UNIFORM_WINDOW = "uniform-window"

_CSV_HEADER_FULL = "pid,arrival_ms,burst_ms"
_CSV_HEADER_NO_ARRIVAL = "pid,burst_ms"

_DIGITS = re.compile(r"[0-9]+")


class WorkloadError(ValueError):
    """Malformed or inconsistent workload input."""


def ms_to_ticks(text: str) -> int:
    """Parse a decimal millisecond string into integer ticks, exactly."""
    s = text.strip()
    if s.startswith("-"):
        raise WorkloadError(f"time value {s!r} is negative")
    whole, dot, frac = s.partition(".")
    if dot and len(frac) > 3:
        raise WorkloadError(f"time value {s!r} has more than 3 fractional digits")
    if not _DIGITS.fullmatch(whole) or (dot and not _DIGITS.fullmatch(frac)):
        raise WorkloadError(f"time value {s!r} is not a decimal number")
    ticks = int(whole) * TICKS_PER_MS
    if dot:
        ticks += int(frac) * 10 ** (3 - len(frac))
    return ticks


def ticks_to_ms(ticks: int) -> str:
    """Render ticks as a decimal millisecond string with trailing zeros trimmed."""
    whole, frac = divmod(ticks, TICKS_PER_MS)
    if frac == 0:
        return str(whole)
    return f"{whole}.{frac:03d}".rstrip("0")


@dataclass(frozen=True)
class ProcessSpec:
    pid: str
    arrival: int  # ticks
    burst: int    # ticks


@dataclass(frozen=True)
class WorkloadSpec:
    """An ordered set of processes; input order is the submission tie-break order."""

    processes: tuple[ProcessSpec, ...]
    label: str = ""

    def max_burst(self) -> int:
        return max(p.burst for p in self.processes)

    def total_burst(self) -> int:
        return sum(p.burst for p in self.processes)


@dataclass(frozen=True)
class GeneratorParams:
    count: int
    max_burst: int  # ticks
    arrival_mode: str = ARRIVAL_ALL_ZERO
    arrival_window: int = 0  # ticks, uniform-window mode only
    seed: int = 0


def _check_processes(processes, label):
    if not processes:
        raise WorkloadError("no processes defined")
    return WorkloadSpec(tuple(processes), label)


def parse_workload(text: str, format: str = "csv") -> WorkloadSpec:
    """Parse CSV or JSON workload text; row order is preserved."""
    if format == "csv":
        return _parse_csv(text)
    if format == "json":
        return _parse_json(text)
    raise WorkloadError(f"unknown workload format {format!r}")


def _parse_csv(text: str) -> WorkloadSpec:
    lines = text.split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise WorkloadError("empty input")
    header = lines[0]
    if header == _CSV_HEADER_FULL:
        has_arrival = True
    elif header == _CSV_HEADER_NO_ARRIVAL:
        has_arrival = False
    else:
        raise WorkloadError(f"unrecognized header {header!r}")
    processes = []
    seen: dict[str, int] = {}
    for row, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        want = 3 if has_arrival else 2
        if len(fields) != want:
            raise WorkloadError(f"row {row}: expected {want} fields, got {len(fields)}")
        pid = fields[0]
        if not pid:
            raise WorkloadError(f"row {row}: empty pid")
        if pid in seen:
            raise WorkloadError(f"row {row}: duplicate pid {pid!r} (first seen in row {seen[pid]})")
        seen[pid] = row
        try:
            arrival = ms_to_ticks(fields[1]) if has_arrival else 0
            burst = ms_to_ticks(fields[-1])
        except WorkloadError as exc:
            raise WorkloadError(f"row {row}: {exc}") from None
        if burst <= 0:
            raise WorkloadError(f"row {row}: burst must be positive")
        processes.append(ProcessSpec(pid, arrival, burst))
    return _check_processes(processes, "")


def _parse_json(text: str) -> WorkloadSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkloadError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or not isinstance(obj.get("processes"), list):
        raise WorkloadError("expected an object with a 'processes' list")
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise WorkloadError("'label' must be a string")
    processes = []
    seen: dict[str, int] = {}
    for row, entry in enumerate(obj["processes"], start=1):
        if not isinstance(entry, dict):
            raise WorkloadError(f"process {row}: expected an object")
        pid = entry.get("pid")
        if not isinstance(pid, str) or not pid:
            raise WorkloadError(f"process {row}: missing or empty pid")
        if pid in seen:
            raise WorkloadError(f"process {row}: duplicate pid {pid!r}")
        seen[pid] = row
        try:
            arrival = ms_to_ticks(_json_time(entry, "arrival_ms", row, default="0"))
            burst = ms_to_ticks(_json_time(entry, "burst_ms", row))
        except WorkloadError as exc:
            raise WorkloadError(f"process {row}: {exc}") from None
        if burst <= 0:
            raise WorkloadError(f"process {row}: burst must be positive")
        processes.append(ProcessSpec(pid, arrival, burst))
    return _check_processes(processes, label)


def _json_time(entry, key, row, default=None):
    value = entry.get(key, default)
    if not isinstance(value, str):
        # decimals travel as strings so parsing stays exact
        raise WorkloadError(f"process {row}: {key} must be a decimal string")
    return value


def export_workload(workload: WorkloadSpec, format: str = "csv") -> str:
    if format == "csv":
        if any(p.arrival for p in workload.processes):
            lines = [_CSV_HEADER_FULL]
            lines += [
                f"{p.pid},{ticks_to_ms(p.arrival)},{ticks_to_ms(p.burst)}"
                for p in workload.processes
            ]
        else:
            lines = [_CSV_HEADER_NO_ARRIVAL]
            lines += [f"{p.pid},{ticks_to_ms(p.burst)}" for p in workload.processes]
        return "\n".join(lines) + "\n"
    if format == "json":
        obj = {
            "label": workload.label,
            "processes": [
                {
                    "pid": p.pid,
                    "arrival_ms": ticks_to_ms(p.arrival),
                    "burst_ms": ticks_to_ms(p.burst),
                }
                for p in workload.processes
            ],
        }
        return json.dumps(obj, separators=(",", ":")) + "\n"
    raise WorkloadError(f"unknown workload format {format!r}")


def generate_random(params: GeneratorParams) -> WorkloadSpec:
    """Deterministic pseudo-random workload: same params and seed, same output."""
    if params.count < 1:
        raise WorkloadError("count must be at least 1")
    if params.max_burst < 1:
        raise WorkloadError("max burst must be at least 1 tick")
    if params.arrival_mode not in (ARRIVAL_ALL_ZERO, ARRIVAL_UNIFORM_WINDOW):
        raise WorkloadError(f"unknown arrival mode {params.arrival_mode!r}")
    if params.arrival_mode == ARRIVAL_UNIFORM_WINDOW and params.arrival_window < 0:
        raise WorkloadError("arrival window must be non-negative")
    rng = random.Random(params.seed)
    processes = []
    for i in range(1, params.count + 1):
        burst = rng.randint(1, params.max_burst)
        if params.arrival_mode == ARRIVAL_UNIFORM_WINDOW:
            arrival = rng.randint(0, params.arrival_window)
        else:
            arrival = 0
        processes.append(ProcessSpec(f"P{i}", arrival, burst))
    return WorkloadSpec(tuple(processes), label=f"random-seed{params.seed}")
