"""Standard single-species cuckoo search, the comparison baseline.

Each iteration has a Levy-flight phase (every nest proposes a move and the
proposal replaces a randomly chosen nest if strictly better) followed by a
discovery phase in which the worst ``p_a`` fraction of nests try a local walk
towards the difference of two random nests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .problem import DEFAULT_PENALTY, PenaltyConfig, Problem, clamp_and_snap, error_metric, evaluate_penalized
from .rng import LevyParams, distinct_random_pair, mantegna_step, stream


class SearchAborted(RuntimeError):
    """An evaluation failed mid-run; carries where it happened."""

    def __init__(self, message: str, iteration: int, fe_used: int):
        super().__init__(f"{message} (iteration {iteration}, {fe_used} evaluations)")
        self.iteration = iteration
        self.fe_used = fe_used


@dataclass
class TrialResult:
    best_x: np.ndarray
    best_f: float
    e_f: Optional[float]
    trace: np.ndarray  # best-so-far after each iteration
    fe_trace: np.ndarray  # cumulative evaluations after each iteration
    fe_used: int

    @property
    def iterations(self) -> int:
        return len(self.trace)


@dataclass(frozen=True)
class CsParams:
    population: int = 80
    p_a: float = 0.25
    levy: LevyParams = field(default_factory=LevyParams)
    t_max: int = 1000
    max_fe: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.population < 3:
            raise ValueError(f"population must be >= 3, got {self.population}")
        if not 0.0 <= self.p_a <= 1.0:
            raise ValueError(f"p_a must lie in [0, 1], got {self.p_a}")
        if self.t_max < 1:
            raise ValueError(f"t_max must be >= 1, got {self.t_max}")
        if self.max_fe is not None and self.max_fe < 1:
            raise ValueError(f"max_fe must be >= 1, got {self.max_fe}")


class Evaluator:
    """Penalised, budgeted batch evaluation that tracks the best point seen."""

    def __init__(self, problem: Problem, rng: np.random.Generator, max_fe: Optional[int] = None,
                 penalty: PenaltyConfig = DEFAULT_PENALTY):
        self.problem = problem
        self.rng = rng
        self.max_fe = max_fe
        self.penalty = penalty
        self.fe_used = 0
        self.best_x = None
        self.best_f = math.inf

    @property
    def remaining(self) -> float:
        return math.inf if self.max_fe is None else self.max_fe - self.fe_used

    @property
    def exhausted(self) -> bool:
        return self.remaining <= 0

    def affordable(self, count: int) -> int:
        return int(min(count, self.remaining))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Score the rows of ``x``; the caller must stay within :meth:`affordable`."""
        if len(x) > self.remaining:
            raise RuntimeError("evaluation budget exceeded")
        if len(x) == 0:
            return np.empty(0)
        f = np.asarray(evaluate_penalized(self.problem, x, self.penalty, self.rng), dtype=float)
        self.fe_used += len(x)
        i = int(np.argmin(f))
        if f[i] < self.best_f:
            self.best_f = float(f[i])
            self.best_x = x[i].copy()
        return f


def local_walk(x_i, x_j, x_k, beta: float, p_a: float, rng: np.random.Generator, gate: bool = True):
    """``x_i + beta * s * H(p_a - eps) * (x_j - x_k)``, row-wise.

    ``s`` is uniform per coordinate and ``eps`` uniform per row. With
    ``gate=False`` the Heaviside factor is taken as 1.
    """
    x_i = np.asarray(x_i, dtype=float)
    s = rng.random(x_i.shape)
    step = beta * s * (np.asarray(x_j) - np.asarray(x_k))
    if gate:
        eps = rng.random(x_i.shape[:-1])
        step = step * (eps < p_a)[..., None]
    return x_i + step


def levy_flight(x, alpha_eff, lam: float, rng: np.random.Generator):
    """``x + alpha_eff * L`` with independent Mantegna steps per coordinate."""
    x = np.asarray(x, dtype=float)
    return x + alpha_eff * mantegna_step(lam, rng, x.shape)


def levy_scale(x, best, problem: Problem, levy: LevyParams) -> np.ndarray:
    """Per-coordinate Levy scale for moves starting at ``x``.

    ``"best"`` mode shrinks steps as ``x`` approaches ``best``; ``"domain"``
    mode uses a fixed fraction of the box width.
    """
    if levy.step_scale == "domain":
        return levy.alpha * problem.width
    return levy.alpha * np.abs(np.asarray(x) - best)


def _result(problem: Problem, ev: Evaluator, trace, fe_trace) -> TrialResult:
    e_f = None if problem.known_min is None else error_metric(ev.best_f, problem.known_min)
    return TrialResult(ev.best_x, ev.best_f, e_f, np.array(trace), np.array(fe_trace, dtype=np.int64), ev.fe_used)


def cs_run(problem: Problem, params: CsParams, penalty: PenaltyConfig = DEFAULT_PENALTY,
           rng: Optional[np.random.Generator] = None) -> TrialResult:
    rng = stream(params.seed) if rng is None else rng
    ev = Evaluator(problem, rng, params.max_fe, penalty)
    n = params.population
    lam, beta = params.levy.lam, params.levy.beta
    n_discover = int(params.p_a * n)

    count = ev.affordable(n)
    nests = problem.sample(rng, n)[:count]
    try:
        fit = ev(nests)
    except ArithmeticError as exc:
        raise SearchAborted(str(exc), 0, ev.fe_used) from exc
    trace, fe_trace = [], []
    if count < n:
        return _result(problem, ev, [ev.best_f], [ev.fe_used])

    for t in range(params.t_max):
        try:
            scale = levy_scale(nests, nests[np.argmin(fit)], problem, params.levy)
            new = clamp_and_snap(levy_flight(nests, scale, lam, rng), problem)
            k = ev.affordable(n)
            new_f = ev(new[:k])
            targets = rng.integers(0, n, k)
            for i in range(k):
                j = targets[i]
                if new_f[i] < fit[j]:
                    nests[j] = new[i]
                    fit[j] = new_f[i]

            if n_discover and not ev.exhausted:
                worst = np.argsort(fit, kind="stable")[n - n_discover:]
                pj, pk = distinct_random_pair(n, rng, size=n_discover)
                cand = local_walk(nests[worst], nests[pj], nests[pk], beta, params.p_a, rng)
                cand = clamp_and_snap(cand, problem)
                moved = np.flatnonzero(np.any(cand != nests[worst], axis=1))
                moved = moved[: ev.affordable(moved.size)]
                cand_f = ev(cand[moved])
                better = cand_f < fit[worst[moved]]
                rows = worst[moved[better]]
                nests[rows] = cand[moved[better]]
                fit[rows] = cand_f[better]
        except ArithmeticError as exc:
            raise SearchAborted(str(exc), t, ev.fe_used) from exc
        trace.append(ev.best_f)
        fe_trace.append(ev.fe_used)
        if ev.exhausted:
            break
    return _result(problem, ev, trace, fe_trace)
