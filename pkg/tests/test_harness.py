import csv

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mscs.harness import (ConfigError, ExperimentConfig, TrialRecord, best_at, emit_trace, run_campaign, run_case,
                          run_trials, trace_table)
from mscs.cs import TrialResult


def read(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def small(tmp_path, **kw):
    base = dict(function="f5", dim=4, trials=3, t_max=40, seed=11, out=tmp_path)
    base.update(kw)
    return ExperimentConfig(**base)


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        small(tmp_path, trials=0)
    with pytest.raises(ConfigError):
        small(tmp_path, function="f99")
    with pytest.raises(ConfigError):
        small(tmp_path, algorithm="de")


def test_campaign_files_and_headers(tmp_path):
    records, summary = run_campaign(small(tmp_path))
    results = (tmp_path / "results.csv").read_text()
    assert results.startswith("problem,algo,trial,best_f,e_f,fe_used\n")
    assert "\r" not in results
    assert (tmp_path / "summary.csv").read_text().startswith("problem,algo,best_e,mean_e,fe_mean\n")
    rows = read(tmp_path / "results.csv")
    assert [(r["algo"], int(r["trial"])) for r in rows] == [(a, t) for a in ("cs", "mscs") for t in range(3)]
    assert [s.algo for s in summary] == ["cs", "mscs"]


def test_campaign_is_byte_identical(tmp_path):
    run_campaign(small(tmp_path / "a"))
    run_campaign(small(tmp_path / "b"))
    for name in ("results.csv", "summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_trial_results_do_not_depend_on_trial_count(tmp_path):
    few = run_trials(small(tmp_path, trials=2))
    more = run_trials(small(tmp_path, trials=4))
    pick = lambda recs, a: [r.best_f for r in recs if r.algo == a][:2]
    assert pick(few, "mscs") == pick(more, "mscs") and pick(few, "cs") == pick(more, "cs")


def test_summary_matches_results(tmp_path):
    run_campaign(small(tmp_path, trials=5))
    rows = read(tmp_path / "results.csv")
    summ = {r["algo"]: r for r in read(tmp_path / "summary.csv")}
    for algo in ("cs", "mscs"):
        e = [float(r["e_f"]) for r in rows if r["algo"] == algo]
        assert float(summ[algo]["best_e"]) == float(f"{min(e):.3e}")
        assert float(summ[algo]["mean_e"]) == float(f"{np.mean(e):.3e}")
        assert float(summ[algo]["best_e"]) <= float(summ[algo]["mean_e"])


def test_single_trial_best_equals_mean(tmp_path):
    _, summary = run_campaign(small(tmp_path, trials=1))
    for s in summary:
        assert s.best_e == s.mean_e


def test_budget_parity_in_both_mode(tmp_path):
    recs = run_trials(small(tmp_path, trials=4, t_max=60))
    cs = {r.trial: r.fe_used for r in recs if r.algo == "cs"}
    ms = {r.trial: r.fe_used for r in recs if r.algo == "mscs"}
    assert cs == ms


def test_explicit_budget_caps_both(tmp_path):
    recs = run_trials(small(tmp_path, max_fe=900, t_max=1000))
    assert all(r.fe_used == 900 for r in recs)


@pytest.mark.parametrize("algo", ["cs", "mscs"])
def test_single_algorithm(tmp_path, algo):
    recs, summary = run_campaign(small(tmp_path, algorithm=algo))
    assert {r.algo for r in recs} == {algo} and len(summary) == 1


def test_aborted_trials_are_recorded(tmp_path, monkeypatch):
    import mscs.harness as harness
    from mscs.cs import SearchAborted

    real = harness.cs_run
    calls = []

    def flaky(problem, params):
        calls.append(params.seed)
        if len(calls) % 2:
            raise SearchAborted("boom", 3, 123)
        return real(problem, params)

    monkeypatch.setattr(harness, "cs_run", flaky)
    recs, summary = run_campaign(small(tmp_path, algorithm="cs", trials=6))
    aborted = [r for r in recs if r.result is None]
    assert aborted and all(r.fe_used == 123 for r in aborted)
    assert "nan" in (tmp_path / "results.csv").read_text()
    assert np.isfinite(summary[0].best_e)


def fake(trace, fe):
    trace = np.array(trace, dtype=float)
    return TrialResult(None, trace[-1], trace[-1], trace, np.array(fe), fe[-1])


def test_best_at_reads_last_completed_iteration():
    r = fake([5, 3, 2, 1], [10, 20, 30, 40])
    assert list(best_at(r, np.array([5, 10, 25, 40, 99]))) == [5, 5, 3, 1, 1]


@settings(max_examples=20)
@given(st.lists(st.floats(0, 100), min_size=1, max_size=30))
def test_trace_table_monotone(values):
    trace = np.maximum.accumulate(np.array(values)[::-1])[::-1]
    fe = np.arange(1, len(trace) + 1) * 7
    recs = []
    for algo in ("cs", "mscs"):
        recs.append(TrialRecord("p", algo, 0, fake(trace, fe), int(fe[-1])))
    table = trace_table(recs, 30)
    assert table.shape == (30, 2)
    assert np.all(np.diff(table, axis=0) <= 0)


def test_emit_trace(tmp_path):
    table = emit_trace(small(tmp_path, t_max=25, trials=3))
    rows = read(tmp_path / "trace.csv")
    assert len(rows) == 25 and list(rows[0]) == ["iter", "cs_best", "mscs_best"]
    assert [int(r["iter"]) for r in rows] == list(range(1, 26))
    assert np.all(np.diff(table, axis=0) <= 0)


def test_case_spring(tmp_path):
    report = run_case(ExperimentConfig(function="spring", t_max=30, seed=1, out=tmp_path), runs=3)
    assert report.runs == 3 and report.feasible is not None
    kv = dict(r for r in csv.reader(open(tmp_path / "report.csv")))
    assert kv["case"] == "spring" and len(read(tmp_path / "results.csv")) == 3


def test_case_iris_uses_short_runs(tmp_path, iris_path):
    report = run_case(ExperimentConfig(function="iris", data=iris_path, seed=1, out=tmp_path), runs=2)
    assert 0 < report.best_accuracy <= 1
    assert all(len(r.result.trace) == 100 for r in report.records)


def test_case_vibration_reports_mean(tmp_path):
    report = run_case(ExperimentConfig(function="vibration", t_max=20, seed=1, out=tmp_path), runs=2)
    assert report.mean_x.shape == (2,)


def test_case_iris_missing_file(tmp_path):
    with pytest.raises(OSError):
        run_case(ExperimentConfig(function="iris", data=tmp_path / "none", out=tmp_path), runs=1)


def test_case_rejects_benchmark(tmp_path):
    with pytest.raises(ConfigError):
        run_case(small(tmp_path))
