"""Optimisation problem container, penalised evaluation and the error metric.

Objectives and constraints are written against arrays of shape ``(..., D)``
and return arrays of shape ``(...)``, so the same callable scores one point or
a whole batch of candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

Objective = Callable[..., np.ndarray]


class EvaluationError(ArithmeticError):
    """A non-finite objective or constraint value.

    ``index`` is the offending row of a batch (None for a single point);
    ``source`` names the objective or the constraint, e.g. ``"g3"``.
    """

    def __init__(self, message: str, index: Optional[int] = None, source: str = "objective"):
        super().__init__(message)
        self.index = index
        self.source = source


@dataclass(frozen=True)
class IntegerDim:
    """Dimension ``index`` restricted to the grid ``origin + k * step``."""

    index: int
    step: float = 1.0
    origin: float = 0.0

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")


@dataclass(frozen=True, eq=False)
class Problem:
    name: str
    lower: np.ndarray
    upper: np.ndarray
    objective: Objective
    constraints: tuple = ()
    integer_dims: tuple = ()
    known_min: Optional[float] = None
    # noisy objectives take the caller's generator as a second argument
    noisy: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.shape != upper.shape or lower.size == 0:
            raise ValueError(f"{self.name}: bounds must be equal-length non-empty vectors")
        if not np.all(lower < upper):
            raise ValueError(f"{self.name}: need lower < upper in every dimension")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "integer_dims", tuple(self.integer_dims))
        for spec in self.integer_dims:
            if not 0 <= spec.index < lower.size:
                raise ValueError(f"{self.name}: integer dimension {spec.index} out of range")

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def raw(self, x, rng: Optional[np.random.Generator] = None):
        """Objective value without penalties."""
        x = np.asarray(x, dtype=float)
        if self.noisy:
            if rng is None:
                raise ValueError(f"{self.name} is noisy and needs a random generator")
            return self.objective(x, rng)
        return self.objective(x)

    def violations(self, x) -> np.ndarray:
        """Constraint values stacked on the last axis, shape ``(..., n_constraints)``."""
        x = np.asarray(x, dtype=float)
        if not self.constraints:
            return np.zeros(x.shape[:-1] + (0,))
        return np.stack([np.asarray(g(x), dtype=float) for g in self.constraints], axis=-1)

    def is_feasible(self, x, tol: float = 0.0) -> bool:
        return bool(np.all(self.violations(x) <= tol))

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Uniform random points in the box, snapped onto any integer grids."""
        x = self.lower + rng.random((count, self.dim)) * self.width
        return clamp_and_snap(x, self)


@dataclass(frozen=True)
class PenaltyConfig:
    coefficient: float = 1e9

    def __post_init__(self):
        if not self.coefficient > 0:
            raise ValueError(f"penalty coefficient must be positive, got {self.coefficient}")


DEFAULT_PENALTY = PenaltyConfig()


def _check_finite(values: np.ndarray, source: str) -> None:
    bad = ~np.isfinite(values)
    if np.any(bad):
        index = None if values.ndim == 0 else int(np.flatnonzero(bad.reshape(-1))[0])
        raise EvaluationError(f"non-finite {source} value", index=index, source=source)


def evaluate_penalized(problem: Problem, x, penalty: PenaltyConfig = DEFAULT_PENALTY,
                       rng: Optional[np.random.Generator] = None):
    """Objective plus ``coefficient * sum(max(0, g_i)**2)``.

    ``x`` may be a single point or a batch of rows; the result has the batch
    shape. Feasible points get the raw objective exactly.
    """
    x = np.asarray(x, dtype=float)
    f = np.asarray(problem.raw(x, rng), dtype=float)
    _check_finite(f, "objective")
    if not problem.constraints:
        return f if f.ndim else float(f)
    total = np.zeros_like(f)
    for i, g in enumerate(problem.constraints):
        gi = np.asarray(g(x), dtype=float)
        _check_finite(gi, f"g{i + 1}")
        total = total + np.maximum(gi, 0.0) ** 2
    # adding an exact zero keeps feasible values bit-identical to the raw objective
    out = np.where(total > 0, f + penalty.coefficient * total, f)
    return out if out.ndim else float(out)


def clamp_and_snap(x, problem: Problem) -> np.ndarray:
    """Clip into the box, then round integer dimensions to the nearest in-bound grid point."""
    out = np.clip(np.asarray(x, dtype=float), problem.lower, problem.upper)
    for spec in problem.integer_dims:
        lo, hi = problem.lower[spec.index], problem.upper[spec.index]
        k = np.rint((out[..., spec.index] - spec.origin) / spec.step)
        v = spec.origin + k * spec.step
        v = np.where(v > hi, spec.origin + (k - 1) * spec.step, v)
        v = np.where(v < lo, spec.origin + (k + 1) * spec.step, v)
        out[..., spec.index] = v
    return out


def error_metric(f_found: float, f_true: float) -> float:
    """Absolute error ``|f_found - f_true|``."""
    if not (np.isfinite(f_found) and np.isfinite(f_true)):
        raise EvaluationError(f"error metric needs finite inputs, got {f_found}, {f_true}")
    return abs(float(f_found) - float(f_true))
