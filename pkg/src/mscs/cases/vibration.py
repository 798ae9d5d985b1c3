"""Damping/stiffness identification for a forced oscillator.

The model is ``y'' + mu y' + nu y = 40 cos(3t)``, integrated with classical
fixed-step RK4 on the first-order system ``(y, y')``. Parameters may be arrays,
in which case one integration runs per element (used to score a whole batch
of candidates at once).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ..problem import EvaluationError, Problem


class DivergenceError(EvaluationError):
    pass


@dataclass(frozen=True)
class OdeConfig:
    step: float = 0.01
    t_end: float = 2.0
    y0: float = 0.0
    v0: float = 0.0

    def __post_init__(self):
        if not 0 < self.step <= self.t_end:
            raise ValueError(f"need 0 < step <= t_end, got step={self.step}, t_end={self.t_end}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.step))


@dataclass(frozen=True, eq=False)
class VibrationDataset:
    times: np.ndarray
    displacements: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        y = np.array(self.displacements, dtype=float)
        if t.shape != y.shape or t.ndim != 1 or t.size < 2:
            raise ValueError("need at least two (t, y) pairs of equal length")
        if t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ValueError("times must start at 0 and increase strictly")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "displacements", y)


# measured response, eleven samples every 0.2 s
MEASURED = VibrationDataset(
    times=[0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0],
    displacements=[0.00, 0.59, 1.62, 2.21, 1.89, 0.69, -0.99, -2.53, -3.36, -3.15, -1.92],
)


def forcing(t):
    return 40.0 * np.cos(3.0 * t)


def analytic_response(t):
    """Closed-form response for ``mu=4, nu=5`` starting from rest."""
    t = np.asarray(t, dtype=float)
    return np.exp(-2 * t) * (np.cos(t) - 7 * np.sin(t)) + 3 * np.sin(3 * t) - np.cos(3 * t)


def rk4(rhs, state0, step: float, n_steps: int, t0: float = 0.0) -> np.ndarray:
    """Classical RK4 for ``state' = rhs(t, state)``; returns the ``n_steps + 1`` states."""
    state = np.asarray(state0, dtype=float)
    out = np.empty((n_steps + 1,) + state.shape)
    out[0] = state
    h = step
    for i in range(n_steps):
        t = t0 + i * h
        k1 = rhs(t, state)
        k2 = rhs(t + 0.5 * h, state + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, state + 0.5 * h * k2)
        k4 = rhs(t + h, state + h * k3)
        state = state + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = state
    return out


def _rk4_step(y, v, mu, nu, h, f0, fh, f1):
    """One classical RK4 step of ``y'' = f - mu y' - nu y``."""
    k1y, k1v = v, f0 - mu * v - nu * y
    y2, v2 = y + 0.5 * h * k1y, v + 0.5 * h * k1v
    k2y, k2v = v2, fh - mu * v2 - nu * y2
    y3, v3 = y + 0.5 * h * k2y, v + 0.5 * h * k2v
    k3y, k3v = v3, fh - mu * v3 - nu * y3
    y4, v4 = y + h * k3y, v + h * k3v
    k4y, k4v = v4, f1 - mu * v4 - nu * y4
    return (y + h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y),
            v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v))


def rk4_solve(mu, nu, cfg: OdeConfig = OdeConfig()):
    """Integrate from ``(y0, v0)`` and return ``(t, y)``.

    ``t`` has ``n_steps + 1`` samples; ``y`` has shape ``broadcast(mu, nu).shape + (n_steps + 1,)``.
    The step is linear in ``(y, v, f0, fh, f1)``, so its coefficients are read
    off by stepping unit inputs once and the loop only applies that affine map.
    """
    mu, nu = np.broadcast_arrays(np.asarray(mu, dtype=float), np.asarray(nu, dtype=float))
    if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(nu))):
        raise ValueError("mu and nu must be finite")
    h = cfg.step
    n = cfg.n_steps
    t = np.arange(n + 1) * h
    unit = np.eye(5)[:, :, None]
    cy, cv = _rk4_step(*unit[:2], mu.ravel(), nu.ravel(), h, *unit[2:])
    cy = cy.reshape((5,) + mu.shape)
    cv = cv.reshape((5,) + mu.shape)
    f0, fh, f1 = forcing(t[:-1]), forcing(t[:-1] + 0.5 * h), forcing(t[1:])
    # forcing contribution of every step, shape (..., n)
    by = cy[2][..., None] * f0 + cy[3][..., None] * fh + cy[4][..., None] * f1
    bv = cv[2][..., None] * f0 + cv[3][..., None] * fh + cv[4][..., None] * f1
    out = np.empty(mu.shape + (n + 1,))
    y = np.full(mu.shape, cfg.y0)
    v = np.full(mu.shape, cfg.v0)
    out[..., 0] = y
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n):
            y, v = cy[0] * y + cy[1] * v + by[..., i], cv[0] * y + cv[1] * v + bv[..., i]
            out[..., i + 1] = y
    if not np.all(np.isfinite(out)):
        raise DivergenceError("RK4 state became non-finite", source="rk4")
    return t, out


def sample_indices(data: VibrationDataset, cfg: OdeConfig) -> np.ndarray:
    if data.times[-1] > cfg.t_end + 1e-12:
        raise ValueError(f"integration ends at {cfg.t_end} before the last sample {data.times[-1]}")
    return np.rint(data.times / cfg.step).astype(int)


def vibration_objective(mu, nu, data: VibrationDataset = MEASURED, cfg: OdeConfig = OdeConfig()):
    """Sum of squared residuals between the RK4 response and the measurements."""
    idx = sample_indices(data, cfg)
    _, y = rk4_solve(mu, nu, cfg)
    return np.sum((y[..., idx] - data.displacements) ** 2, axis=-1)


class _VibrationSSE:
    def __init__(self, data: VibrationDataset, cfg: OdeConfig):
        self.data = data
        self.cfg = cfg

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return vibration_objective(x[..., 0], x[..., 1], self.data, self.cfg)


def vibration_problem(data: VibrationDataset = MEASURED, cfg: OdeConfig = OdeConfig(),
                      lower=(0.0, 0.0), upper=(10.0, 10.0)) -> Problem:
    """Two-parameter search over ``(mu, nu)``; one SSE is one function evaluation."""
    sample_indices(data, cfg)
    return Problem(
        name="vibration",
        lower=lower,
        upper=upper,
        objective=_VibrationSSE(data, cfg),
        metadata={"variables": ("mu", "nu")},
    )


def write_vibration_csv(path, data: VibrationDataset = MEASURED) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "y"])
        for t, y in zip(data.times, data.displacements):
            writer.writerow([f"{t:.2f}", f"{y:.2f}"])
