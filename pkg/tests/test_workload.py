from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from schedsim.workload import (
    ARRIVAL_ALL_ZERO,
    ARRIVAL_UNIFORM_WINDOW,
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

DATA = Path(__file__).parent / "data"

EXP_A_CSV = "pid,burst_ms\nP1,22\nP2,18\nP3,9\nP4,10\nP5,5\n"


def test_parse_experiment_a_table():
    w = parse_workload(EXP_A_CSV)
    assert [p.pid for p in w.processes] == ["P1", "P2", "P3", "P4", "P5"]
    assert w.processes[0].burst == 22000
    assert w.processes[4].burst == 5000
    assert all(p.arrival == 0 for p in w.processes)


def test_parse_fractional_arrival_is_exact():
    w = parse_workload("pid,arrival_ms,burst_ms\nP5,8.019,9\n")
    assert w.processes[0].arrival == 8019
    assert w.processes[0].burst == 9000


def test_parse_three_column_zero_arrival_rows():
    text = "pid,arrival_ms,burst_ms\nP1,0,22\nP2,0,18\nP3,0,9\nP4,0,10\nP5,0,5\n"
    w = parse_workload(text)
    assert len(w.processes) == 5
    assert w.processes[0].burst == 22000
    assert all(p.arrival == 0 for p in w.processes)


def test_ms_to_ticks_values():
    assert ms_to_ticks("0") == 0
    assert ms_to_ticks("2.4") == 2400
    assert ms_to_ticks("8.019") == 8019
    assert ms_to_ticks("5.1") == 5100
    assert ms_to_ticks("0.001") == 1


@given(st.integers(min_value=0, max_value=10**9))
def test_ticks_roundtrip_through_text(ticks):
    assert ms_to_ticks(ticks_to_ms(ticks)) == ticks


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=0, max_value=999))
def test_tick_conversion_formula(whole, frac):
    text = f"{whole}.{frac:03d}"
    assert ms_to_ticks(text) == 1000 * whole + frac


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("pid,burst_ms\nP1,0\n", "burst must be positive"),
        ("pid,burst_ms\nP1,5\nP1,3\n", "duplicate pid"),
        ("pid,arrival_ms,burst_ms\nP1,-1,5\n", "negative"),
        ("pid,burst_ms\nP1,1.0001\n", "more than 3 fractional digits"),
        ("pid,burst_ms\n", "no processes"),
        ("pid,burst_ms\nP1\n", "row 2"),
        ("pid,burst_ms\nP1,abc\n", "not a decimal"),
        ("nope\n", "header"),
    ],
)
def test_parse_errors_name_the_problem(text, fragment):
    with pytest.raises(WorkloadError, match=fragment):
        parse_workload(text)


def test_error_messages_carry_row_numbers():
    with pytest.raises(WorkloadError, match="row 3"):
        parse_workload("pid,burst_ms\nP1,5\nP2,0\n")


def test_parse_json_workload():
    text = (
        '{"label":"two","processes":['
        '{"pid":"A","arrival_ms":"1.5","burst_ms":"2"},'
        '{"pid":"B","burst_ms":"0.75"}]}'
    )
    w = parse_workload(text, "json")
    assert w.label == "two"
    assert w.processes[0].arrival == 1500
    assert w.processes[1].arrival == 0
    assert w.processes[1].burst == 750


def test_parse_json_rejects_numeric_times():
    with pytest.raises(WorkloadError, match="decimal string"):
        parse_workload('{"processes":[{"pid":"A","burst_ms":2}]}', "json")


workloads = st.builds(
    WorkloadSpec,
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=10**6),
            st.integers(min_value=1, max_value=10**6),
        ),
        min_size=1,
        max_size=10,
    ).map(
        lambda rows: tuple(
            ProcessSpec(f"P{i+1}", arrival, burst)
            for i, (arrival, burst) in enumerate(rows)
        )
    ),
)


@given(workloads)
def test_csv_roundtrip(w):
    assert parse_workload(export_workload(w, "csv"), "csv") == WorkloadSpec(w.processes, "")


@given(workloads)
def test_json_roundtrip(w):
    assert parse_workload(export_workload(w, "json"), "json") == w


def test_generator_is_deterministic():
    params = GeneratorParams(count=7, max_burst=9999, seed=123,
                             arrival_mode=ARRIVAL_UNIFORM_WINDOW, arrival_window=5000)
    assert generate_random(params) == generate_random(params)


def test_generator_bounds_and_pids():
    w = generate_random(GeneratorParams(count=12, max_burst=500, seed=9))
    assert [p.pid for p in w.processes] == [f"P{i}" for i in range(1, 13)]
    assert all(1 <= p.burst <= 500 for p in w.processes)
    assert all(p.arrival == 0 for p in w.processes)


def test_generator_single_tick_burst_is_forced():
    w = generate_random(GeneratorParams(count=1, max_burst=1, seed=77))
    assert w.processes == (ProcessSpec("P1", 0, 1),)


def test_generator_golden_file():
    w = generate_random(GeneratorParams(count=20, max_burst=50_000, seed=42))
    golden = (DATA / "generated_seed42.csv").read_text()
    assert export_workload(w, "csv") == golden


def test_generator_rejects_bad_params():
    with pytest.raises(WorkloadError):
        generate_random(GeneratorParams(count=0, max_burst=10))
    with pytest.raises(WorkloadError):
        generate_random(GeneratorParams(count=1, max_burst=0))
    with pytest.raises(WorkloadError):
        generate_random(GeneratorParams(count=1, max_burst=1, arrival_mode="bogus"))
