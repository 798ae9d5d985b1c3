"""Seeded random streams and the stochastic primitives used by the search moves.

A stream is a plain :class:`numpy.random.Generator` over PCG64. Child streams
for independent trials are derived with :class:`numpy.random.SeedSequence`
from ``(master_seed, trial)``, so a trial's draws do not depend on which other
trials ran or in what order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SEED_LIMIT = 2**64


def stream(seed: int) -> np.random.Generator:
    """Return a fresh PCG64 generator for a 64-bit seed."""
    _check_seed(seed)
    return np.random.Generator(np.random.PCG64(seed))


def child_seed(master_seed: int, trial: int) -> int:
    """Mix ``(master_seed, trial)`` into a 64-bit child seed.

    The mixing function is numpy's SeedSequence hash of the two integers,
    which is stable across platforms and numpy releases.
    """
    _check_seed(master_seed)
    if trial < 0:
        raise ValueError(f"trial index must be nonnegative, got {trial}")
    state = np.random.SeedSequence([master_seed, trial]).generate_state(1, np.uint64)
    return int(state[0])


def trial_stream(master_seed: int, trial: int) -> np.random.Generator:
    return stream(child_seed(master_seed, trial))


def _check_seed(seed: int) -> None:
    if not 0 <= int(seed) < SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")


@dataclass(frozen=True)
class LevyParams:
    """Step parameters shared by both searches.

    ``lam`` is the power-law exponent of the Levy steps, ``alpha`` the Levy
    step scale and ``beta`` the local-walk scale. ``step_scale`` picks what
    ``alpha`` multiplies: ``"best"`` uses the per-coordinate distance to the
    current best solution, ``"domain"`` the width of the search box.
    """

    lam: float = 1.5
    alpha: float = 0.01
    beta: float = 0.01
    step_scale: str = "domain"

    def __post_init__(self):
        _check_exponent(self.lam)
        if not self.alpha > 0 or not self.beta > 0:
            raise ValueError(f"alpha and beta must be positive, got {self.alpha}, {self.beta}")
        if self.step_scale not in ("best", "domain"):
            raise ValueError(f"step_scale must be 'best' or 'domain', got {self.step_scale!r}")


def _check_exponent(lam: float) -> None:
    if not 1.0 < lam < 2.0:
        raise ValueError(f"Levy exponent must lie in (1, 2), got {lam}")


@lru_cache(maxsize=None)
def mantegna_sigma(lam: float) -> float:
    """Standard deviation of the numerator Gaussian in Mantegna's scheme."""
    _check_exponent(lam)
    num = math.gamma(1 + lam) * math.sin(math.pi * lam / 2)
    den = math.gamma((1 + lam) / 2) * lam * 2 ** ((lam - 1) / 2)
    return (num / den) ** (1 / lam)


def mantegna_step(lam: float, rng: np.random.Generator, size=None):
    """Draw Levy-stable-like steps ``u / |v|**(1/lam)`` (Mantegna 1994).

    Returns a float when ``size`` is None, otherwise an array of that shape.
    """
    sigma = mantegna_sigma(lam)
    u = rng.normal(0.0, sigma, size)
    v = rng.normal(0.0, 1.0, size)
    return u / np.abs(v) ** (1.0 / lam)


def random_binary_mask(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim < 1:
        raise ValueError(f"mask length must be >= 1, got {dim}")
    return rng.integers(0, 2, dim, dtype=np.int8)


def distinct_random_pair(n: int, rng: np.random.Generator, size=None):
    """Draw ordered index pairs ``(j, k)`` with ``j != k`` uniformly from ``range(n)``.

    With ``size`` given, returns two integer arrays of that shape.
    """
    if n < 3:
        raise ValueError(f"need a population of at least 3, got {n}")
    j = rng.integers(0, n, size)
    k = rng.integers(0, n - 1, size)
    k = k + (k >= j)
    if size is None:
        return int(j), int(k)
    return j, k


def random_orthogonal_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormalise a Gaussian matrix column by column.

    Each column is projected off the previous ones twice (classical
    Gram-Schmidt with reorthogonalisation) so the residual stays near machine
    precision up to a few hundred dimensions.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    a = rng.standard_normal((dim, dim))
    q = np.empty_like(a)
    for c in range(dim):
        v = a[:, c].copy()
        for _ in range(2):
            v -= q[:, :c] @ (q[:, :c].T @ v)
        q[:, c] = v / np.linalg.norm(v)
    return q
