import collections

import pytest

import felsim


def short(text, duration_ms):
    return text.replace("duration_ms = 60000", f"duration_ms = {duration_ms}")


def test_scenario_ini_validates():
    for kind in "abc":
        felsim.validate_ini(felsim.scenario_ini(kind, seed=4))


def test_config_error_names_field():
    text = felsim.scenario_ini("a").replace("duration_ms = 60000", "duration_ms = 0")
    with pytest.raises(felsim.ConfigError, match="scenario.duration_ms"):
        felsim.validate_ini(text)
    with pytest.raises(ValueError):
        felsim.validate_ini("[scenario]\nunknown = 1\n")


def test_run_returns_contract_csv():
    out = felsim.run_ini(short(felsim.scenario_ini("a"), 3000), seeds=[1, 2], jobs=2)
    assert out["metrics"].splitlines()[0] == felsim.METRICS_HEADER
    assert out["counters"].splitlines()[0] == felsim.COUNTERS_HEADER
    assert "\r" not in out["metrics"]
    rows = felsim.read_csv(out["metrics"])
    assert {r["run_seed"] for r in rows} == {"1", "2"}
    latency = collections.defaultdict(set)
    for r in rows:
        latency[r["scenario"]].add(int(r["latency_ms"]))
    assert latency["a-cloud"] == {74}
    assert latency["a-fel"] <= {16, 74}


def test_runs_are_repeatable():
    text = short(felsim.scenario_ini("b"), 5000)
    assert felsim.run_ini(text, jobs=1) == felsim.run_ini(text, jobs=2)


def test_zipf_sampler():
    draws = felsim.ZipfSampler(4, 1.0).sample(seed=3, count=20000)
    assert set(draws) == {1, 2, 3, 4}
    # P(1) = 12/25 for N=4, s=1.
    assert abs(draws.count(1) / len(draws) - 0.48) < 0.02
