"""Multi-trial campaigns, convergence traces and case-study runs, written as CSV.

Every number is formatted with a fixed rule (``repr`` of the float for per-trial
rows, 4-significant-digit scientific notation for summaries) and rows are
ordered by problem, algorithm and trial, so identical configurations produce
identical bytes.

In ``both`` mode the comparison is evaluation-matched: trial ``t`` of MSCS runs
first, then trial ``t`` of CS is given exactly the evaluations MSCS used (CS is
not limited by its iteration count in this mode).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .benchmarks import CATALOG, SUITE_SEED, benchmark
from .cases import (clustering_accuracy, clustering_problem, load_iris, pressure_vessel_problem,
                    speed_reducer_problem, spring_problem, vibration_problem)
from .cs import CsParams, SearchAborted, TrialResult, cs_run
from .engine import MscsParams, mscs_run
from .problem import Problem
from .rng import LevyParams, child_seed

ALGORITHMS = ("cs", "mscs", "both")
CASES = ("spring", "vessel", "reducer", "vibration", "iris")
CASE_RUNS = 20
IRIS_T_MAX = 100
# quadratic penalties leave boundary violations of order 1e-7
FEASIBILITY_TOL = 1e-6
DEFAULT_IRIS_PATH = Path(__file__).resolve().parents[2] / "tests" / "data" / "iris.data"

RESULTS_HEADER = ("problem", "algo", "trial", "best_f", "e_f", "fe_used")
SUMMARY_HEADER = ("problem", "algo", "best_e", "mean_e", "fe_mean")
TRACE_HEADER = ("iter", "cs_best", "mscs_best")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment. ``function`` names a benchmark (with ``dim``) or a case."""

    function: str = "f2"
    dim: int = 10
    algorithm: str = "both"
    trials: int = 100
    t_max: int = 1000
    max_fe: Optional[int] = None
    seed: int = 0
    out: Path = Path("out")
    suite_seed: int = SUITE_SEED
    data: Optional[Path] = None
    # algorithm overrides
    levy: LevyParams = field(default_factory=LevyParams)
    p_a: float = 0.25
    cs_population: int = 80
    species_sizes: tuple = (20, 20)
    r: int = 1
    w: int = 20
    q: int = 4

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.function not in CATALOG and self.function not in CASES:
            raise ConfigError(f"unknown problem {self.function!r}")
        object.__setattr__(self, "out", Path(self.out))

    def cs_params(self, seed: int, t_max: Optional[int] = None, max_fe: Optional[int] = None) -> CsParams:
        return CsParams(population=self.cs_population, p_a=self.p_a, levy=self.levy,
                        t_max=self.t_max if t_max is None else t_max,
                        max_fe=self.max_fe if max_fe is None else max_fe, seed=seed)

    def mscs_params(self, seed: int) -> MscsParams:
        return MscsParams(species_sizes=self.species_sizes, r=self.r, w=self.w, q=self.q, p_a=self.p_a,
                          levy=self.levy, t_max=self.t_max, max_fe=self.max_fe, seed=seed)


@dataclass
class TrialRecord:
    problem: str
    algo: str
    trial: int
    result: Optional[TrialResult]
    fe_used: int
    error: Optional[str] = None

    @property
    def best_f(self) -> float:
        return math.nan if self.result is None else self.result.best_f

    @property
    def e_f(self) -> Optional[float]:
        return math.nan if self.result is None else self.result.e_f


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    algo: str
    best_e: float
    mean_e: float
    fe_mean: float


def build_problem(config: ExperimentConfig) -> Problem:
    name = config.function
    if name in CATALOG:
        return benchmark(name, config.dim, config.suite_seed)
    if name == "spring":
        return spring_problem()
    if name == "vessel":
        return pressure_vessel_problem()
    if name == "reducer":
        return speed_reducer_problem()
    if name == "vibration":
        return vibration_problem()
    path = config.data if config.data is not None else DEFAULT_IRIS_PATH
    return clustering_problem(load_iris(path))


def _guarded(problem: Problem, algo: str, trial: int, run) -> TrialRecord:
    try:
        res = run()
    except SearchAborted as exc:
        return TrialRecord(problem.name, algo, trial, None, exc.fe_used, str(exc))
    return TrialRecord(problem.name, algo, trial, res, res.fe_used)


def run_trial(problem: Problem, config: ExperimentConfig, trial: int) -> dict:
    """Run trial ``trial`` of every selected algorithm; keys are ``"cs"`` / ``"mscs"``."""
    seed = child_seed(config.seed, trial)
    out = {}
    if config.algorithm in ("mscs", "both"):
        out["mscs"] = _guarded(problem, "mscs", trial, lambda: mscs_run(problem, config.mscs_params(seed)))
    if config.algorithm == "cs":
        out["cs"] = _guarded(problem, "cs", trial, lambda: cs_run(problem, config.cs_params(seed)))
    elif config.algorithm == "both":
        budget = out["mscs"].fe_used
        # CS runs until it has spent the same number of evaluations
        params = config.cs_params(seed, t_max=budget, max_fe=budget)
        out["cs"] = _guarded(problem, "cs", trial, lambda: cs_run(problem, params))
    return dict(sorted(out.items()))


def run_trials(config: ExperimentConfig, problem: Optional[Problem] = None) -> list:
    """All trials of ``config``, ordered by algorithm then trial index."""
    problem = build_problem(config) if problem is None else problem
    per_trial = [run_trial(problem, config, t) for t in range(config.trials)]
    algos = sorted(per_trial[0])
    return [rec[a] for a in algos for rec in per_trial]


def fmt_full(value: Optional[float]) -> str:
    if value is None:
        return ""
    return repr(float(value))


def fmt_short(value: float) -> str:
    return f"{value:.3e}"


def summarize(records: list) -> list:
    rows = []
    for algo in sorted({r.algo for r in records}):
        recs = [r for r in records if r.algo == algo]
        errs = np.array([r.e_f for r in recs if r.e_f is not None and not math.isnan(r.e_f)])
        best = float(errs.min()) if errs.size else math.nan
        mean = float(errs.mean()) if errs.size else math.nan
        rows.append(SummaryRow(recs[0].problem, algo, best, mean, float(np.mean([r.fe_used for r in recs]))))
    return rows


def _write_csv(path: Path, header, rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_results(path: Path, records: list) -> Path:
    return _write_csv(path, RESULTS_HEADER, (
        (r.problem, r.algo, r.trial, fmt_full(r.best_f), fmt_full(r.e_f), r.fe_used) for r in records
    ))


def write_summary(path: Path, rows: list) -> Path:
    return _write_csv(path, SUMMARY_HEADER, (
        (s.problem, s.algo, fmt_short(s.best_e), fmt_short(s.mean_e), fmt_short(s.fe_mean)) for s in rows
    ))


def run_campaign(config: ExperimentConfig) -> tuple:
    """Run, then write ``results.csv`` and ``summary.csv`` under ``config.out``."""
    records = run_trials(config)
    summary = summarize(records)
    write_results(config.out / "results.csv", records)
    write_summary(config.out / "summary.csv", summary)
    return records, summary


def best_at(result: TrialResult, checkpoints: np.ndarray) -> np.ndarray:
    """Best-so-far of ``result`` after its last iteration within each evaluation checkpoint.

    Checkpoints before the first completed iteration get the value after the first one.
    """
    idx = np.searchsorted(result.fe_trace, checkpoints, side="right") - 1
    return result.trace[np.clip(idx, 0, len(result.trace) - 1)]


def trace_table(records: list, t_max: int) -> np.ndarray:
    """``(t_max, 2)`` medians over trials of the best-so-far for CS and MSCS.

    Rows are MSCS generations; CS is read off at the same cumulative evaluation
    count so both columns compare equal spending. A finished trace is held at
    its final value.
    """
    by = {a: {r.trial: r.result for r in records if r.algo == a and r.result is not None} for a in ("cs", "mscs")}
    trials = sorted(set(by["cs"]) & set(by["mscs"]))
    if not trials:
        raise ConfigError("every trial aborted; nothing to trace")
    cs_cols, mscs_cols = [], []
    for t in trials:
        m = by["mscs"][t]
        pad = t_max - len(m.trace)
        m_trace = np.concatenate([m.trace, np.full(max(pad, 0), m.trace[-1])])[:t_max]
        m_fe = np.concatenate([m.fe_trace, np.full(max(pad, 0), m.fe_trace[-1])])[:t_max]
        mscs_cols.append(m_trace)
        cs_cols.append(best_at(by["cs"][t], m_fe))
    return np.column_stack([np.median(cs_cols, axis=0), np.median(mscs_cols, axis=0)])


def emit_trace(config: ExperimentConfig) -> np.ndarray:
    """Run both algorithms and write ``trace.csv`` with ``t_max`` rows."""
    config = replace(config, algorithm="both")
    records = run_trials(config)
    table = trace_table(records, config.t_max)
    _write_csv(config.out / "trace.csv", TRACE_HEADER, (
        (i + 1, fmt_full(cs), fmt_full(ms)) for i, (cs, ms) in enumerate(table)
    ))
    return table


@dataclass
class CaseReport:
    name: str
    best_x: np.ndarray
    best_f: float
    runs: int
    feasible: Optional[bool] = None
    mean_x: Optional[np.ndarray] = None  # vibration: mean (mu, nu) over runs
    best_accuracy: Optional[float] = None  # iris
    records: list = field(default_factory=list)

    def rows(self) -> list:
        out = [("case", self.name), ("runs", str(self.runs)), ("best_f", fmt_full(self.best_f)),
               ("best_x", " ".join(fmt_full(v) for v in self.best_x))]
        if self.feasible is not None:
            out.append(("feasible", str(self.feasible).lower()))
        if self.mean_x is not None:
            out.append(("mean_x", " ".join(fmt_full(v) for v in self.mean_x)))
        if self.best_accuracy is not None:
            out.append(("best_accuracy", fmt_full(self.best_accuracy)))
        return out


def run_case(config: ExperimentConfig, runs: int = CASE_RUNS) -> CaseReport:
    """``runs`` independent MSCS runs of a case; writes ``results.csv`` and ``report.csv``."""
    if config.function not in CASES:
        raise ConfigError(f"unknown case {config.function!r}; expected one of {CASES}")
    t_max = IRIS_T_MAX if config.function == "iris" else config.t_max
    config = replace(config, algorithm="mscs", trials=runs, t_max=t_max)
    problem = build_problem(config)
    records = run_trials(config, problem)
    done = [r for r in records if r.result is not None]
    if not done:
        raise ConfigError(f"all {runs} runs of {config.function} aborted")
    best = min(done, key=lambda r: r.best_f).result
    report = CaseReport(config.function, best.best_x, best.best_f, runs, records=records)
    if problem.constraints:
        report.feasible = problem.is_feasible(best.best_x, tol=FEASIBILITY_TOL)
    if config.function == "vibration":
        report.mean_x = np.mean([r.result.best_x for r in done], axis=0)
    if config.function == "iris":
        data = problem.metadata["dataset"]
        report.best_accuracy = max(clustering_accuracy(r.result.best_x, data) for r in done)
    write_results(config.out / "results.csv", records)
    _write_csv(config.out / "report.csv", ("key", "value"), report.rows())
    return report
