import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mscs.benchmarks import benchmark
from mscs.cs import CsParams, Evaluator, SearchAborted, cs_run, levy_flight, levy_scale, local_walk
from mscs.problem import Problem
from mscs.rng import LevyParams


def sphere(x):
    return np.sum(np.asarray(x) ** 2, axis=-1)


SPHERE = Problem("sphere", [-5.0] * 4, [5.0] * 4, sphere, known_min=0.0)


def test_params_validation():
    with pytest.raises(ValueError):
        CsParams(population=2)
    with pytest.raises(ValueError):
        CsParams(p_a=1.5)
    with pytest.raises(ValueError):
        CsParams(t_max=0)
    with pytest.raises(ValueError):
        CsParams(max_fe=0)


def test_evaluator_counts_and_tracks_best(rng):
    ev = Evaluator(SPHERE, rng, max_fe=5)
    ev(np.array([[1.0] * 4, [0.5] * 4]))
    assert ev.fe_used == 2 and ev.best_f == 1.0
    assert ev.affordable(10) == 3
    ev(np.zeros((3, 4)))
    assert ev.exhausted and ev.best_f == 0.0
    with pytest.raises(RuntimeError):
        ev(np.zeros((1, 4)))


def test_local_walk_gate_closed_keeps_point(rng):
    x = rng.random((50, 3))
    assert np.array_equal(local_walk(x, x + 1, x - 1, 0.5, 0.0, rng), x)


def test_local_walk_gate_open_moves_within_span(rng):
    x = rng.random((50, 3))
    xj, xk = rng.random((50, 3)), rng.random((50, 3))
    y = local_walk(x, xj, xk, 0.5, 1.0, rng)
    step = (y - x) / (0.5 * (xj - xk))
    assert np.all((step >= 0) & (step < 1))


def test_local_walk_gate_frequency(rng):
    x = np.zeros((20_000, 2))
    y = local_walk(x, np.ones_like(x), -np.ones_like(x), 1.0, 0.25, rng)
    assert np.mean(np.any(y != 0, axis=1)) == pytest.approx(0.25, abs=0.01)


def test_levy_flight_zero_scale_is_identity(rng):
    x = rng.random((5, 3))
    assert np.array_equal(levy_flight(x, 0.0, 1.5, rng), x)


def test_levy_scale_modes():
    x = np.array([[1.0, -1.0, 0.0, 0.0]])
    best = np.zeros(4)
    assert np.allclose(levy_scale(x, best, SPHERE, LevyParams(step_scale="domain")), 0.1)
    assert np.allclose(levy_scale(x, best, SPHERE, LevyParams(step_scale="best")), [[0.01, 0.01, 0, 0]])


def test_run_is_deterministic():
    a = cs_run(SPHERE, CsParams(t_max=30, seed=3))
    b = cs_run(SPHERE, CsParams(t_max=30, seed=3))
    assert np.array_equal(a.trace, b.trace) and np.array_equal(a.best_x, b.best_x)


@settings(max_examples=15)
@given(st.integers(0, 2**32), st.integers(1, 60))
def test_trace_monotone_and_inside_box(seed, t_max):
    res = cs_run(SPHERE, CsParams(population=10, t_max=t_max, seed=seed))
    assert len(res.trace) == t_max
    assert np.all(np.diff(res.trace) <= 0)
    assert np.all(np.diff(res.fe_trace) >= 0)
    assert res.best_f == res.trace[-1] == sphere(res.best_x)
    assert np.all(np.abs(res.best_x) <= 5)
    assert res.e_f == res.best_f


@settings(max_examples=15)
@given(st.integers(0, 2**32), st.integers(10, 3000))
def test_budget_never_exceeded(seed, max_fe):
    res = cs_run(SPHERE, CsParams(population=10, t_max=10_000, max_fe=max_fe, seed=seed))
    assert res.fe_used == max_fe
    assert res.fe_trace[-1] == max_fe


def test_fe_per_iteration_bounds():
    res = cs_run(SPHERE, CsParams(population=20, t_max=50, seed=1))
    per_iter = np.diff(res.fe_trace)
    # 20 Levy candidates plus at most int(0.25 * 20) walkers
    assert np.all((per_iter >= 20) & (per_iter <= 25))


def test_cs_improves_on_sphere():
    res = cs_run(SPHERE, CsParams(population=20, t_max=300, seed=0))
    assert res.best_f < 1e-2


def test_nan_objective_aborts_run():
    def sometimes_nan(x):
        f = sphere(x)
        return np.where(f < 5.0, np.nan, f)

    p = Problem("nan", [-5.0] * 4, [5.0] * 4, sometimes_nan)
    with pytest.raises(SearchAborted) as info:
        cs_run(p, CsParams(population=20, t_max=500, seed=0))
    assert info.value.fe_used > 0


def test_noisy_benchmark_runs():
    res = cs_run(benchmark("f4", 5), CsParams(population=10, t_max=20, seed=2))
    assert res.e_f >= 0


def test_nan_at_initialisation_aborts():
    p = Problem("nan", [-5.0] * 2, [5.0] * 2, lambda x: np.full(np.shape(x)[:-1], np.nan))
    with pytest.raises(SearchAborted) as info:
        cs_run(p, CsParams(population=5, t_max=5))
    assert info.value.iteration == 0
