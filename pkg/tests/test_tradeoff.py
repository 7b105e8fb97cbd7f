import math

import numpy as np
import pytest

from edge3c import (
    InvalidFieldError,
    SweepSpec,
    cache_power_balance_cpu_hz,
    detect_breakpoints,
    download_offload_crossover_cpu_hz,
    grid_values,
    power_saturation_cpu_hz,
    route_costs,
    rows_to_csv,
    sweep,
    turning_points,
)
from edge3c.tradeoff import INF_TOKEN, SWEEP_PARAMETERS, SweepRow
from conftest import build_config

# 50-digit evaluations of the three turning points of the reference config
F1_REFCFG = 3452613191.6823191
F2_REFCFG = 5425972398.6201986
F3_REFCFG = 6563141670.0792541


def test_power_saturation_scalar():
    assert power_saturation_cpu_hz(1.0, 4.0, 1.0, 1.0, 4.0) == 1.0
    assert power_saturation_cpu_hz(2.0, 8.0, 1.0, 4.0, 1.0) == 2.0
    with pytest.raises(InvalidFieldError):
        power_saturation_cpu_hz(1.0, 4.0, 0.0, 1.0, 4.0)


def test_power_saturation_inversion():
    # computing all tasks locally at the returned speed draws exactly the budget
    rng = np.random.default_rng(1)
    for _ in range(100):
        tau = 10.0 ** rng.uniform(-2, 1)
        p = 10.0 ** rng.uniform(-1, 2)
        mu = 10.0 ** rng.uniform(-28, -25)
        w = rng.uniform(1, 30)
        i_tot = 10.0 ** rng.uniform(4, 8)
        f2 = power_saturation_cpu_hz(tau, p, mu, w, i_tot)
        draw = mu * f2 * f2 * w * i_tot / tau
        assert math.isclose(draw, p, rel_tol=1e-12)


def test_cache_power_balance_inversion():
    # at the returned speed the power bound on local tasks equals the
    # continuous cache capacity C / I_remote
    rng = np.random.default_rng(2)
    for _ in range(100):
        tau = 10.0 ** rng.uniform(-2, 1)
        f_count = int(rng.integers(2, 400))
        i_s = 10.0 ** rng.uniform(4, 7)
        cache = i_s * rng.uniform(0.2, 50)
        k2 = 10.0 ** rng.uniform(-4, -1)
        p = f_count * k2 * rng.uniform(1.05, 4.0)  # keep P > F k2
        mu = 10.0 ** rng.uniform(-28, -25)
        w = rng.uniform(1, 30)
        i_tot = i_s * rng.uniform(1.0, 3.0)
        f3 = cache_power_balance_cpu_hz(tau, f_count, i_s, cache, p, k2, mu, w, i_tot)
        k1 = mu * f3 * f3 * w * i_tot / (tau * f_count)
        u = (p - f_count * k2) / (k1 - k2)
        assert math.isclose(u, cache / i_s, rel_tol=1e-9)


def test_cache_power_balance_none_cases():
    assert cache_power_balance_cpu_hz(1.0, 2, 1.0, 0.0, 2.0, 0.5, 1.0, 1.0, 2.0) is None
    assert cache_power_balance_cpu_hz(1.0, 2, 0.0, 1.0, 2.0, 0.5, 1.0, 1.0, 2.0) is None
    # budget below the all-offload draw: no speed balances the two bounds
    assert cache_power_balance_cpu_hz(1.0, 2, 1.0, 1.0, 1.0, 10.0, 1.0, 1.0, 2.0) is None


def test_offload_crossover_scalar():
    # a1 = 4, a2 = 9, a3 = 1, peak 25: denominator 2 - 25/25 = 1
    assert download_offload_crossover_cpu_hz(29.0, 2.0, 25.0, 1.0, 4.0, 9.0, 1.0) == 29.0
    # download stays above offload at every speed
    assert download_offload_crossover_cpu_hz(1.0, 2.0, 1000.0, 1.0, 1.0, 0.0, 2.0) is None
    assert download_offload_crossover_cpu_hz(1.0, 2.0, 5.0, 1.0, 0.0, 0.0, 2.0) is None


def test_crossover_config_costs_meet():
    # at the crossover speed the download and offload routes cost the same
    cfg = build_config(input_local_bits=4.0, input_remote_bits=25.0, output_bits=9.0,
                      server_cpu_hz=29.0, cpu_hz=29.0, switched_capacitance=1e-6,
                      avg_power_w=1000.0, cache_bits=0.0)
    tp = turning_points(cfg)
    assert math.isclose(tp.f1_hz, 29.0, rel_tol=1e-12)
    costs = route_costs(cfg)
    assert costs.b2 == costs.b3 == 25.0


def test_reference_turning_points(reference_config):
    tp = turning_points(reference_config)
    assert math.isclose(tp.f1_hz, F1_REFCFG, rel_tol=1e-12)
    assert math.isclose(tp.f2_hz, F2_REFCFG, rel_tol=1e-12)
    assert math.isclose(tp.f3_hz, F3_REFCFG, rel_tol=1e-12)
    assert tp.f1_hz < tp.f2_hz < tp.f3_hz
    assert tp.absence_reasons == {}
    d = tp.to_dict()
    assert list(d) == ["f1_hz", "f2_hz", "f3_hz", "absent"]


def test_absence_reasons():
    tp = turning_points(build_config(input_remote_bits=0.0))
    assert tp.f1_hz is None and tp.f3_hz is None
    assert tp.absence_reasons["f1"].startswith("no remote input")
    assert tp.absence_reasons["f3"].startswith("no remote input")

    tp = turning_points(build_config(server_cpu_hz=1.0))  # offload cannot fit
    assert tp.f1_hz is None
    assert "offload route infeasible" in tp.absence_reasons["f1"]

    tp = turning_points(build_config(input_local_bits=0.0, output_bits=0.0))
    assert tp.f1_hz is None
    assert "needs no bandwidth" in tp.absence_reasons["f1"]

    tp = turning_points(build_config(cycles_per_bit=0.0, input_remote_bits=1000.0,
                                     cache_bits=2000.0))
    assert tp.f1_hz is None and tp.f2_hz is None
    assert "exceeds the offload" in tp.absence_reasons["f1"]
    assert "never saturates" in tp.absence_reasons["f2"]

    tp = turning_points(build_config(cache_bits=0.0))
    assert tp.f3_hz is None
    assert "empty cache" in tp.absence_reasons["f3"]

    tp = turning_points(build_config(uplink_psd=400.0))  # k2 = 20, F k2 >> budget
    assert tp.f3_hz is None
    assert "offload-only draw" in tp.absence_reasons["f3"]


def test_grid_values_exact():
    lin = grid_values(SweepSpec("avg_power_w", 0.0, 1.0, 3).validate())
    assert lin == [0.0, 0.5, 1.0]
    log = grid_values(SweepSpec("avg_power_w", 1.0, 16.0, 5, log_scale=True).validate())
    assert log == [1.0, 2.0, 4.0, 8.0, 16.0]


def test_sweep_spec_validation():
    with pytest.raises(InvalidFieldError):
        SweepSpec("nope", 0.0, 1.0, 3).validate()
    with pytest.raises(InvalidFieldError):
        SweepSpec("avg_power_w", 1.0, 1.0, 3).validate()
    with pytest.raises(InvalidFieldError):
        SweepSpec("avg_power_w", 0.0, 1.0, 1).validate()
    with pytest.raises(InvalidFieldError):
        SweepSpec("avg_power_w", 0.0, 1.0, 3, log_scale=True).validate()
    with pytest.raises(InvalidFieldError):
        SweepSpec("avg_power_w", 0.0, 1.0, 3, baselines=("nope",)).validate()
    assert set(SWEEP_PARAMETERS) == {"cache_bits", "device_cpu_hz", "avg_power_w", "deadline_s"}


def test_power_sweep_rows():
    spec = SweepSpec("avg_power_w", 9.0, 25.0, 5, baselines=("mec_only", "local_only"))
    rows = sweep(build_config(), spec)
    assert [r.value for r in rows] == [9.0, 13.0, 17.0, 21.0, 25.0]
    assert rows[0].solution is None and rows[0].error == "power"
    got = [(r.solution.x1, r.solution.x2, r.solution.x3) for r in rows[1:]]
    assert got == [(3, 0, 7), (3, 4, 3), (3, 7, 0), (3, 7, 0)]
    totals = [r.solution.b_total_hz for r in rows[1:]]
    assert totals == [14.0, 10.0, 7.0, 7.0]  # non-increasing in the budget
    # baselines: all-offload needs 10 W, all-local needs 20 W
    assert rows[0].baselines == {"mec_only": None, "local_only": None}
    assert rows[1].baselines == {"mec_only": 20.0, "local_only": None}
    assert rows[3].baselines == {"mec_only": 20.0, "local_only": 7.0}


def test_cache_sweep_descends_one_task_per_step():
    cfg = build_config(avg_power_w=1000.0)
    rows = sweep(cfg, SweepSpec("cache_bits", 0.0, 10.0, 11))
    assert [r.solution.x1 for r in rows] == list(range(11))
    assert [r.solution.b_total_hz for r in rows] == [float(10 - k) for k in range(11)]


def test_csv_schema_and_tokens():
    spec = SweepSpec("avg_power_w", 9.0, 25.0, 5, baselines=("mec_only",))
    rows = sweep(build_config(), spec)
    text = rows_to_csv(rows, spec.baselines)
    lines = text.splitlines()
    assert lines[0] == "param,value,x1,x2,x3,b_total_hz,b_avg_hz,regime,mec_only_hz"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert first[0] == "avg_power_w" and first[1] == "9.0"
    assert first[2:8] == [INF_TOKEN] * 6 and first[8] == INF_TOKEN
    third = lines[3].split(",")
    assert third[2:5] == ["3", "4", "3"]
    assert third[5] == "10.0" and third[8] == "20.0"
    assert text == rows_to_csv(rows, spec.baselines)  # pure function


def test_sweep_thread_count_invariance():
    spec = SweepSpec("device_cpu_hz", 1.0, 5.0, 9)
    serial = rows_to_csv(sweep(build_config(), spec))
    threaded = rows_to_csv(sweep(build_config(), spec, threads=4))
    assert serial == threaded


def test_detect_breakpoints_on_power_sweep():
    rows = sweep(build_config(), SweepSpec("avg_power_w", 9.0, 25.0, 5))
    # INF -> power-limited -> cache-then-power -> power-ample
    assert detect_breakpoints(rows) == [13.0, 17.0, 21.0]


def test_detect_breakpoints_input_rules():
    rows = sweep(build_config(), SweepSpec("avg_power_w", 9.0, 25.0, 5))
    with pytest.raises(InvalidFieldError):
        detect_breakpoints(rows[:2])
    mixed = rows[:2] + [SweepRow("cache_bits", 99.0, None, "power", {})]
    with pytest.raises(InvalidFieldError):
        detect_breakpoints(mixed)
    with pytest.raises(InvalidFieldError):
        detect_breakpoints(list(reversed(rows)))
