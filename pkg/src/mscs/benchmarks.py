"""Benchmark functions and the shift/rotate/bias wrapper.

Every raw function takes ``(..., D)`` arrays, is nonnegative and has its
minimum 0 at the origin. The suite substitutes seeded local shift vectors and
rotations for the official CEC data files, so it is reproducible but not
bit-identical to CEC.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .problem import Problem
from .rng import random_orthogonal_matrix, stream

SUITE_SEED = 20181085


def sphere(z):
    return np.sum(z * z, axis=-1)


def ackley(z):
    d = z.shape[-1]
    rms = np.sqrt(np.sum(z * z, axis=-1) / d)
    cos_mean = np.sum(np.cos(2 * np.pi * z), axis=-1) / d
    # grouped so both pairs cancel exactly at the origin
    return 20.0 * (1.0 - np.exp(-0.2 * rms)) + (np.e - np.exp(cos_mean))


def forest(z):
    """Yang's forest-like function."""
    return np.sum(np.abs(z), axis=-1) * np.exp(-np.sum(np.sin(z * z), axis=-1))


def schwefel_1_2(z):
    return np.sum(np.cumsum(z, axis=-1) ** 2, axis=-1)


def schwefel_2_22(z):
    a = np.abs(z)
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def rosenbrock(z):
    # origin-centred: the classic minimum at (1, ..., 1) is moved to 0
    y = z + 1.0
    return np.sum(100.0 * (y[..., :-1] ** 2 - y[..., 1:]) ** 2 + (y[..., :-1] - 1.0) ** 2, axis=-1)


def griewank(z):
    i = np.sqrt(np.arange(1, z.shape[-1] + 1))
    return 1.0 + np.sum(z * z, axis=-1) / 4000.0 - np.prod(np.cos(z / i), axis=-1)


def bent_cigar(z):
    return z[..., 0] ** 2 + 1e6 * np.sum(z[..., 1:] ** 2, axis=-1)


def discus(z):
    return 1e6 * z[..., 0] ** 2 + np.sum(z[..., 1:] ** 2, axis=-1)


_W_A, _W_B, _W_KMAX = 0.5, 3.0, 20
_W_AK = _W_A ** np.arange(_W_KMAX + 1)
_W_BK = _W_B ** np.arange(_W_KMAX + 1)
_W_REF = np.cos(2 * np.pi * _W_BK * 0.5)


def weierstrass(z):
    """Weierstrass with a=0.5, b=3, k=0..20; period 1 in every coordinate."""
    terms = np.cos(2 * np.pi * _W_BK * (z[..., None] + 0.5)) - _W_REF
    return np.sum(terms @ _W_AK, axis=-1)


_SCHWEFEL_SHIFT = 420.9687462275036
_SCHWEFEL_PEAK = _SCHWEFEL_SHIFT * np.sin(np.sqrt(_SCHWEFEL_SHIFT))


def schwefel(z):
    """CEC2015 modified Schwefel (sine-sqrt) with out-of-range correction."""
    d = z.shape[-1]
    y = z + _SCHWEFEL_SHIFT
    inside = y * np.sin(np.sqrt(np.abs(y)))
    m_hi = 500.0 - np.fmod(y, 500.0)
    above = m_hi * np.sin(np.sqrt(np.abs(m_hi))) - (y - 500.0) ** 2 / (10000.0 * d)
    m_lo = np.fmod(np.abs(y), 500.0) - 500.0
    below = m_lo * np.sin(np.sqrt(np.abs(m_lo))) - (y + 500.0) ** 2 / (10000.0 * d)
    g = np.where(y > 500.0, above, np.where(y < -500.0, below, inside))
    return np.sum(_SCHWEFEL_PEAK - g, axis=-1)


_K_TWO = 2.0 ** np.arange(1, 33)


def katsuura(z):
    d = z.shape[-1]
    t = _K_TWO * z[..., None]
    inner = np.sum(np.abs(t - np.rint(t)) / _K_TWO, axis=-1)
    factors = (1.0 + np.arange(1, d + 1) * inner) ** (10.0 / d ** 1.2)
    c = 10.0 / d**2
    return c * np.prod(factors, axis=-1) - c


RAW_FUNCTIONS = {
    "sphere": sphere,
    "ackley": ackley,
    "forest": forest,
    "schwefel_1_2": schwefel_1_2,
    "schwefel_2_22": schwefel_2_22,
    "rosenbrock": rosenbrock,
    "griewank": griewank,
    "bent_cigar": bent_cigar,
    "discus": discus,
    "weierstrass": weierstrass,
    "schwefel": schwefel,
    "katsuura": katsuura,
}


def eval_raw(name: str, x, dim: Optional[int] = None):
    """Evaluate a raw function by name; ``dim`` optionally pins the expected length."""
    try:
        fn = RAW_FUNCTIONS[name]
    except KeyError:
        raise LookupError(f"unknown benchmark function {name!r}") from None
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] == 0:
        raise ValueError(f"{name}: need at least one coordinate")
    if dim is not None and x.shape[-1] != dim:
        raise ValueError(f"{name}: expected dimension {dim}, got {x.shape[-1]}")
    if name == "rosenbrock" and x.shape[-1] < 2:
        raise ValueError("rosenbrock needs at least two coordinates")
    return fn(x)


@dataclass(frozen=True, eq=False)
class TransformSpec:
    shift: np.ndarray
    rotation: Optional[np.ndarray] = None  # None means identity
    bias: float = 0.0
    noise: bool = False

    def __post_init__(self):
        shift = np.array(self.shift, dtype=float).reshape(-1)
        object.__setattr__(self, "shift", shift)
        if self.rotation is not None:
            m = np.array(self.rotation, dtype=float)
            if m.shape != (shift.size, shift.size):
                raise ValueError(f"rotation must be {shift.size}x{shift.size}, got {m.shape}")
            if np.max(np.abs(m.T @ m - np.eye(shift.size))) > 1e-10:
                raise ValueError("rotation matrix is not orthogonal to 1e-10")
            object.__setattr__(self, "rotation", m)

    @classmethod
    def identity(cls, dim: int, bias: float = 0.0, noise: bool = False) -> "TransformSpec":
        return cls(np.zeros(dim), None, bias, noise)


class _Transformed:
    """Picklable objective ``x -> raw(M (x - o)) [* noise] + bias``."""

    def __init__(self, fn, t: TransformSpec):
        self.fn = fn
        self.t = t

    def __call__(self, x, rng=None):
        z = np.asarray(x, dtype=float) - self.t.shift
        if self.t.rotation is not None:
            z = z @ self.t.rotation.T
        value = self.fn(z)
        if self.t.noise:
            value = value * (1.0 + 0.4 * np.abs(rng.standard_normal(np.shape(value))))
        return value + self.t.bias


def make_transformed(name: str, t: TransformSpec, lower, upper, label: Optional[str] = None) -> Problem:
    if name not in RAW_FUNCTIONS:
        raise LookupError(f"unknown benchmark function {name!r}")
    d = t.shift.size
    lower = np.broadcast_to(np.asarray(lower, dtype=float), (d,))
    upper = np.broadcast_to(np.asarray(upper, dtype=float), (d,))
    if not np.all((lower < t.shift) & (t.shift < upper)):
        raise ValueError(f"{name}: shift must lie strictly inside the search domain")
    return Problem(
        name=label or name,
        lower=lower,
        upper=upper,
        objective=_Transformed(RAW_FUNCTIONS[name], t),
        known_min=float(t.bias),
        noisy=t.noise,
        metadata={"raw": name, "transform": t},
    )


# label: (raw name, domain, shifted, rotated, bias, noisy)
CATALOG = {
    "f1": ("sphere", (-100.0, 100.0), True, False, -450.0, False),
    "f2": ("ackley", (-32.768, 32.768), False, False, 0.0, False),
    "f3": ("forest", (-2 * np.pi, 2 * np.pi), False, False, 0.0, False),
    "f4": ("schwefel_1_2", (-100.0, 100.0), True, False, -450.0, True),
    "f5": ("schwefel_2_22", (-10.0, 10.0), False, False, 0.0, False),
    "f6": ("rosenbrock", (-100.0, 100.0), True, False, 390.0, False),
    "f7": ("griewank", (0.0, 600.0), True, True, -180.0, False),
    "f11": ("bent_cigar", (-100.0, 100.0), False, True, 100.0, False),
    "f12": ("discus", (-100.0, 100.0), False, True, 200.0, False),
    "f13": ("weierstrass", (-100.0, 100.0), True, True, 300.0, False),
    "f14": ("schwefel", (-100.0, 100.0), True, True, 400.0, False),
    "f15": ("katsuura", (-100.0, 100.0), True, True, 500.0, False),
}


def benchmark(label: str, dim: int, seed: int = SUITE_SEED) -> Problem:
    """One catalog function at dimension ``dim``.

    Shifts are uniform over the central 80% of the domain and rotations come
    from :func:`random_orthogonal_matrix`, both drawn from a stream seeded by
    ``(seed, function number, dim)``.
    """
    try:
        raw, (lo, hi), shifted, rotated, bias, noisy = CATALOG[label]
    except KeyError:
        raise LookupError(f"unknown benchmark {label!r}; choose from {', '.join(CATALOG)}") from None
    if dim < 2:
        raise ValueError(f"benchmark dimension must be >= 2, got {dim}")
    rng = stream(seed * 1000003 + int(label[1:]) * 1009 + dim)
    shift = np.zeros(dim)
    if shifted:
        shift = lo + (hi - lo) * (0.1 + 0.8 * rng.random(dim))
    rotation = random_orthogonal_matrix(dim, rng) if rotated else None
    t = TransformSpec(shift, rotation, bias, noisy)
    return make_transformed(raw, t, lo, hi, label=label)


def suite_catalog(dim: int, seed: int = SUITE_SEED) -> list:
    """The twelve implemented paper benchmarks at dimension ``dim``, in paper order."""
    return [benchmark(label, dim, seed) for label in CATALOG]
