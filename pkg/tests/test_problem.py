import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from mscs.problem import (EvaluationError, IntegerDim, PenaltyConfig, Problem, clamp_and_snap, error_metric,
                          evaluate_penalized)


def sphere(x):
    return np.sum(np.asarray(x) ** 2, axis=-1)


def disc(x):
    # feasible inside the unit disc
    return np.sum(np.asarray(x) ** 2, axis=-1) - 1.0


def box(**kw):
    return Problem("box", [-2.0, -2.0], [2.0, 2.0], sphere, **kw)


def test_bounds_validated():
    with pytest.raises(ValueError):
        Problem("p", [0.0], [0.0], sphere)
    with pytest.raises(ValueError):
        Problem("p", [0.0, 1.0], [1.0], sphere)
    with pytest.raises(ValueError):
        Problem("p", [0.0], [1.0], sphere, integer_dims=(IntegerDim(1),))


def test_bounds_are_read_only():
    p = box()
    with pytest.raises(ValueError):
        p.lower[0] = 5.0


def test_integer_dim_step_positive():
    with pytest.raises(ValueError):
        IntegerDim(0, step=0.0)


def test_penalty_coefficient_positive():
    with pytest.raises(ValueError):
        PenaltyConfig(coefficient=0.0)


def test_feasible_point_scores_raw_objective():
    p = box(constraints=(disc,))
    assert evaluate_penalized(p, [0.3, 0.4]) == sphere([0.3, 0.4])


def test_infeasible_point_pays_quadratic_penalty():
    p = box(constraints=(disc,))
    x = np.array([1.0, 1.0])
    assert evaluate_penalized(p, x, PenaltyConfig(10.0)) == pytest.approx(2.0 + 10.0 * 1.0)


@given(hnp.arrays(float, (7, 2), elements=st.floats(-2, 2)))
def test_penalty_never_below_objective(x):
    p = box(constraints=(disc,))
    f = evaluate_penalized(p, x)
    assert np.all(f >= sphere(x))
    feasible = disc(x) <= 0
    assert np.array_equal(f[feasible], sphere(x)[feasible])


def test_batch_matches_single():
    p = box(constraints=(disc,))
    x = np.array([[0.1, 0.2], [1.5, -1.5], [0.0, 1.0]])
    batch = evaluate_penalized(p, x)
    assert np.array_equal(batch, [evaluate_penalized(p, row) for row in x])


def test_non_finite_objective_raises():
    p = Problem("nan", [0.0], [1.0], lambda x: np.full(np.shape(x)[:-1], np.nan))
    with pytest.raises(EvaluationError):
        evaluate_penalized(p, [0.5])


def test_noisy_problem_needs_generator():
    p = Problem("noisy", [0.0], [1.0], lambda x, rng: sphere(x) * (1 + rng.random()), noisy=True)
    with pytest.raises(ValueError):
        p.raw([0.5])
    assert p.raw([0.5], np.random.default_rng(0)) >= 0.25


def test_is_feasible_tolerance():
    p = box(constraints=(disc,))
    assert not p.is_feasible([1.0, 0.001])
    assert p.is_feasible([1.0, 0.001], tol=1e-5)


grid = Problem("grid", [0.0625, 10.0], [6.1875, 200.0], sphere, integer_dims=(IntegerDim(0, 0.0625),))


@given(hnp.arrays(float, (5, 2), elements=st.floats(-1e3, 1e3)))
def test_clamp_and_snap_lands_inside_and_on_grid(x):
    y = clamp_and_snap(x, grid)
    assert np.all(y >= grid.lower) and np.all(y <= grid.upper)
    k = y[:, 0] / 0.0625
    assert np.allclose(k, np.round(k), atol=1e-9)


@given(hnp.arrays(float, (5, 2), elements=st.floats(-1e3, 1e3)))
def test_clamp_and_snap_is_idempotent(x):
    y = clamp_and_snap(x, grid)
    assert np.array_equal(clamp_and_snap(y, grid), y)


def test_snap_steps_back_inside():
    p = Problem("g", [0.5], [2.5], sphere, integer_dims=(IntegerDim(0, 1.0),))
    assert clamp_and_snap([0.5], p)[0] == 1.0
    assert clamp_and_snap([2.5], p)[0] == 2.0


def test_sample_respects_bounds_and_grid(rng):
    x = grid.sample(rng, 500)
    assert x.shape == (500, 2)
    assert np.array_equal(clamp_and_snap(x, grid), x)


def test_error_metric():
    assert error_metric(-449.5, -450.0) == 0.5
    assert error_metric(3.0, 3.0) == 0.0
    with pytest.raises(EvaluationError):
        error_metric(math.inf, 0.0)
