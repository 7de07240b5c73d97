"""Render traces as text Gantt charts and metric reports as comparison tables."""

import json
from dataclasses import dataclass

from .engine import ScheduleTrace, merge_contiguous
from .metrics import MetricsReport, format_exact
from .workload import ticks_to_ms

COMPARISON_COLUMNS = (
    "policy",
    "context_switches",
    "avg_waiting_ms",
    "avg_turnaround_ms",
    "avg_response_ms",
    "throughput_per_ms",
    "utilization",
)


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[tuple[str, MetricsReport], ...]
    workload_label: str = ""

    def __post_init__(self):
        modes = {report.mode for _, report in self.rows}
        if len(modes) > 1:
            raise ValueError("comparison rows must share one metrics mode")

    @property
    def mode(self) -> str:
        return self.rows[0][1].mode


def render_gantt_text(trace: ScheduleTrace, merged: bool = True) -> str:
    """One cell per slice in time order, `pid start-end` in decimal ms; idle
    gaps render as `idle`. Merged cells correspond to Gantt chart cells; pass
    merged=False to see raw dispatch slices including continuation boundaries.
    """
    shown = merge_contiguous(trace) if merged else trace
    cells = [(s.start, f"{s.pid} {ticks_to_ms(s.start)}-{ticks_to_ms(s.end)}") for s in shown.slices]
    cells += [(g[0], f"idle {ticks_to_ms(g[0])}-{ticks_to_ms(g[1])}") for g in shown.idle_gaps]
    if not cells:
        return ""
    cells.sort(key=lambda c: c[0])
    return "| " + " | ".join(text for _, text in cells) + " |"


def _row_values(label: str, report: MetricsReport) -> list[str]:
    return [
        label,
        str(report.context_switches),
        format_exact(report.avg_waiting_ms),
        format_exact(report.avg_turnaround_ms),
        format_exact(report.avg_response_ms),
        format_exact(report.throughput_per_ms),
        format_exact(report.cpu_utilization),
    ]


def render_comparison(table: ComparisonTable, format: str = "text") -> str:
    if not table.rows:
        raise ValueError("comparison table has no rows")
    rows = [_row_values(label, report) for label, report in table.rows]
    if format == "csv":
        lines = [",".join(COMPARISON_COLUMNS)]
        lines += [",".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    if format == "json":
        obj = {
            "workload": table.workload_label,
            "mode": table.mode,
            "rows": [dict(zip(COMPARISON_COLUMNS, row)) for row in rows],
        }
        return json.dumps(obj, separators=(",", ":")) + "\n"
    if format == "text":
        header = list(COMPARISON_COLUMNS)
        widths = [
            max(len(header[i]), *(len(row[i]) for row in rows))
            for i in range(len(header))
        ]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        for row in rows:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown comparison format {format!r}")
