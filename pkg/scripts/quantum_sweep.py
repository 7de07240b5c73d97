#!/usr/bin/env python3
"""Sweep the initial quantum over a seeded workload and compare policies.

Shows how the dynamic-quantum policy's advantage over plain round robin moves
with the starting quantum: small quanta inflate RR's context switches while
the doubling policy absorbs them.

Usage: quantum_sweep.py [--seed N] [--count N] [--quanta-ms 1,2,3,5,8,13]
"""

import argparse

from schedsim.engine import simulate
from schedsim.metrics import MODE_STANDARD, compute_metrics
from schedsim.policies import POLICY_OMDRR, POLICY_RR_CYCLIC, PolicyConfig
from schedsim.report import ComparisonTable, render_comparison
from schedsim.workload import (
    ARRIVAL_UNIFORM_WINDOW,
    GeneratorParams,
    generate_random,
    ms_to_ticks,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--max-burst-ms", default="50")
    parser.add_argument("--arrival-window-ms", default="40")
    parser.add_argument("--quanta-ms", default="1,2,3,5,8,13")
    args = parser.parse_args()

    workload = generate_random(GeneratorParams(
        count=args.count,
        max_burst=ms_to_ticks(args.max_burst_ms),
        arrival_mode=ARRIVAL_UNIFORM_WINDOW,
        arrival_window=ms_to_ticks(args.arrival_window_ms),
        seed=args.seed,
    ))
    print(f"workload: {workload.label} ({args.count} processes)")
    for quantum_ms in args.quanta_ms.split(","):
        quantum = ms_to_ticks(quantum_ms.strip())
        rows = []
        for policy in (POLICY_RR_CYCLIC, POLICY_OMDRR):
            config = PolicyConfig(policy, initial_quantum=quantum)
            report = compute_metrics(simulate(workload, config), MODE_STANDARD)
            rows.append((policy, report))
        print(f"\nquantum = {quantum_ms.strip()} ms")
        print(render_comparison(ComparisonTable(tuple(rows), workload.label), "text"), end="")


if __name__ == "__main__":
    main()
