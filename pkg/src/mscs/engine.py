"""Multi-species cuckoo search.

``m`` cuckoo species share one population of ``w`` host nests holding ``q``
eggs each. Every egg carries an owner: the host, or the species whose cuckoo
laid it. One generation is

1. every cuckoo lays ``r`` eggs (local walk within its species with
   probability ``p_a``, Levy flight otherwise) into random nests, each egg
   replacing the nest's worst egg when strictly better;
2. one dimension-wise random swap between a cuckoo of each species pair;
3. every nest whose cuckoo-egg fraction exceeds ``1 - p_a`` is rebuilt by
   Levy flights from its best egg;
4. elitism: each species' best and the best host egg are carried over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cs import Evaluator, SearchAborted, TrialResult, _result, levy_flight, levy_scale, local_walk
from .problem import DEFAULT_PENALTY, PenaltyConfig, Problem, clamp_and_snap
from .rng import LevyParams, random_binary_mask, stream

HOST = -1


@dataclass(frozen=True)
class MscsParams:
    species_sizes: tuple = (20, 20)
    r: int = 1
    w: int = 20
    q: int = 4
    p_a: float = 0.25
    levy: LevyParams = field(default_factory=LevyParams)
    t_max: int = 1000
    max_fe: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.species_sizes)
        object.__setattr__(self, "species_sizes", sizes)
        if not sizes or min(sizes) < 1:
            raise ValueError(f"need at least one species, each with >= 1 cuckoo, got {sizes}")
        if self.r < 1 or self.w < 1 or self.q < 1:
            raise ValueError(f"r, w and q must be >= 1, got r={self.r}, w={self.w}, q={self.q}")
        if not 0.0 <= self.p_a <= 1.0:
            raise ValueError(f"p_a must lie in [0, 1], got {self.p_a}")
        if self.w * self.q < self.n:
            raise ValueError(f"host eggs w*q={self.w * self.q} must be at least n={self.n}")
        if self.t_max < 1:
            raise ValueError(f"t_max must be >= 1, got {self.t_max}")
        if self.max_fe is not None and self.max_fe < 1:
            raise ValueError(f"max_fe must be >= 1, got {self.max_fe}")

    @property
    def m(self) -> int:
        return len(self.species_sizes)

    @property
    def n(self) -> int:
        return sum(self.species_sizes)

    def nominal_fe(self) -> int:
        """Evaluations for ``t_max`` generations, not counting nest rebuilds."""
        swaps = self.m * (self.m - 1) // 2
        return self.n + self.w * self.q + self.t_max * (self.n * self.r + 2 * swaps)


@dataclass
class MscsState:
    """Mutable search state; arrays are indexed by cuckoo, species or nest."""

    cuckoos: np.ndarray  # (n, D)
    cuckoo_f: np.ndarray  # (n,)
    species: np.ndarray  # (n,) species id of each cuckoo
    offsets: np.ndarray  # (m + 1,) species j owns cuckoos offsets[j]:offsets[j+1]
    species_best: np.ndarray  # (m, D) g_j*
    species_best_f: np.ndarray  # (m,)
    eggs: np.ndarray  # (w, q, D)
    egg_f: np.ndarray  # (w, q)
    owner: np.ndarray  # (w, q) HOST or species id
    host_best: np.ndarray  # g_h*, best host-owned egg so far
    host_best_f: float
    evaluator: Evaluator
    iteration: int = 0

    @property
    def fe_used(self) -> int:
        return self.evaluator.fe_used

    @property
    def g_cs(self) -> tuple:
        j = int(np.argmin(self.species_best_f))
        return self.species_best[j], float(self.species_best_f[j])

    @property
    def overall_best(self) -> tuple:
        return self.evaluator.best_x, self.evaluator.best_f

    def cuckoo_fraction(self) -> np.ndarray:
        return np.mean(self.owner != HOST, axis=1)


def init_state(problem: Problem, params: MscsParams, rng: np.random.Generator,
               penalty: PenaltyConfig = DEFAULT_PENALTY) -> MscsState:
    """Random cuckoos and host eggs, all evaluated (``n + w*q`` evaluations)."""
    ev = Evaluator(problem, rng, params.max_fe, penalty)
    n, w, q = params.n, params.w, params.q
    if ev.remaining < n + w * q:
        raise ValueError(f"budget {params.max_fe} cannot cover the {n + w * q} initial evaluations")
    cuckoos = problem.sample(rng, n)
    eggs = problem.sample(rng, w * q)
    f = ev(np.concatenate([cuckoos, eggs]))
    cuckoo_f, egg_f = f[:n], f[n:].reshape(w, q)
    offsets = np.concatenate([[0], np.cumsum(params.species_sizes)])
    species = np.repeat(np.arange(params.m), params.species_sizes)
    best_idx = [lo + int(np.argmin(cuckoo_f[lo:hi])) for lo, hi in zip(offsets[:-1], offsets[1:])]
    h = np.unravel_index(np.argmin(egg_f), egg_f.shape)
    return MscsState(
        cuckoos=cuckoos,
        cuckoo_f=cuckoo_f,
        species=species,
        offsets=offsets,
        species_best=cuckoos[best_idx].copy(),
        species_best_f=cuckoo_f[best_idx].copy(),
        eggs=eggs.reshape(w, q, -1),
        egg_f=egg_f,
        owner=np.full((w, q), HOST),
        host_best=eggs.reshape(w, q, -1)[h].copy(),
        host_best_f=float(egg_f[h]),
        evaluator=ev,
    )


def _propose(state: MscsState, who: np.ndarray, problem: Problem, params: MscsParams,
             rng: np.random.Generator) -> np.ndarray:
    """Candidate eggs for the cuckoos ``who``: local walk if eps < p_a, else a Levy flight."""
    x = state.cuckoos[who]
    sp = state.species[who]
    walk = rng.random(who.size) < params.p_a
    out = np.empty_like(x)
    if np.any(walk):
        rows = np.flatnonzero(walk)
        lo = state.offsets[sp[rows]]
        size = state.offsets[sp[rows] + 1] - lo
        j = (rng.random(rows.size) * size).astype(int)
        k = (rng.random(rows.size) * np.maximum(size - 1, 1)).astype(int)
        k = np.where(size > 1, k + (k >= j), j)
        out[rows] = local_walk(x[rows], state.cuckoos[lo + j], state.cuckoos[lo + k],
                               params.levy.beta, params.p_a, rng, gate=False)
    if not np.all(walk):
        rows = np.flatnonzero(~walk)
        scale = levy_scale(x[rows], state.species_best[sp[rows]], problem, params.levy)
        out[rows] = levy_flight(x[rows], scale, params.levy.lam, rng)
    return clamp_and_snap(out, problem)


def _place(state: MscsState, i: int, x: np.ndarray, f: float, nest: int) -> bool:
    """Greedy egg placement and cuckoo move for one laid egg."""
    if f < state.cuckoo_f[i]:
        state.cuckoos[i] = x
        state.cuckoo_f[i] = f
    worst = int(np.argmax(state.egg_f[nest]))
    if f < state.egg_f[nest, worst]:
        state.eggs[nest, worst] = x
        state.egg_f[nest, worst] = f
        state.owner[nest, worst] = state.species[i]
        return True
    return False


def lay_egg(state: MscsState, species: int, cuckoo: int, nest: int, problem: Problem,
            params: MscsParams, rng: np.random.Generator) -> MscsState:
    """One visit: cuckoo ``cuckoo`` (index within ``species``) lays ``r`` eggs into ``nest``."""
    i = int(state.offsets[species]) + cuckoo
    if not state.offsets[species] <= i < state.offsets[species + 1]:
        raise IndexError(f"species {species} has no cuckoo {cuckoo}")
    for _ in range(params.r):
        if state.evaluator.exhausted:
            break
        x = _propose(state, np.array([i]), problem, params, rng)
        f = state.evaluator(x)[0]
        _place(state, i, x[0], f, nest)
    return state


def species_swap(state: MscsState, a: int, b: int, rng: np.random.Generator) -> MscsState:
    """Exchange coordinates of one random cuckoo from each species under a random mask."""
    if a == b:
        raise ValueError("swap needs two different species")
    ev = state.evaluator
    if ev.affordable(2) < 2:
        return state
    ia = int(state.offsets[a] + rng.integers(state.offsets[a + 1] - state.offsets[a]))
    ib = int(state.offsets[b] + rng.integers(state.offsets[b + 1] - state.offsets[b]))
    mask = random_binary_mask(state.cuckoos.shape[1], rng).astype(bool)
    xa, xb = swap_positions(state.cuckoos[ia], state.cuckoos[ib], mask)
    f = ev(np.stack([xa, xb]))
    state.cuckoos[ia], state.cuckoos[ib] = xa, xb
    state.cuckoo_f[ia], state.cuckoo_f[ib] = f
    return state


def swap_positions(xa, xb, mask) -> tuple:
    """Dimension-wise exchange: ``xa' = xa(1-Q) + xb Q`` and ``xb' = xa Q + xb(1-Q)``."""
    mask = np.asarray(mask, dtype=bool)
    return np.where(mask, xb, xa), np.where(mask, xa, xb)


def abandonment_check(state: MscsState, nest: int, problem: Problem, params: MscsParams,
                      rng: np.random.Generator) -> MscsState:
    """Rebuild ``nest`` when its cuckoo-egg fraction is strictly above ``1 - p_a``."""
    frac = np.mean(state.owner[nest] != HOST)
    if frac > 1.0 - params.p_a and state.evaluator.affordable(params.q) == params.q:
        _rebuild(state, np.array([nest]), problem, params, rng)
    return state


def _rebuild(state: MscsState, nests: np.ndarray, problem: Problem, params: MscsParams,
             rng: np.random.Generator) -> None:
    q = params.q
    origin = state.eggs[nests, np.argmin(state.egg_f[nests], axis=1)]
    start = np.repeat(origin, q, axis=0)
    scale = params.levy.alpha * problem.width
    new = clamp_and_snap(levy_flight(start, scale, params.levy.lam, rng), problem)
    f = state.evaluator(new)
    state.eggs[nests] = new.reshape(nests.size, q, -1)
    state.egg_f[nests] = f.reshape(nests.size, q)
    state.owner[nests] = HOST


def _elitism(state: MscsState) -> None:
    for j in range(len(state.species_best_f)):
        lo, hi = state.offsets[j], state.offsets[j + 1]
        i = lo + int(np.argmin(state.cuckoo_f[lo:hi]))
        if state.cuckoo_f[i] < state.species_best_f[j]:
            state.species_best[j] = state.cuckoos[i]
            state.species_best_f[j] = state.cuckoo_f[i]
        elif state.cuckoo_f[i] > state.species_best_f[j]:
            worst = lo + int(np.argmax(state.cuckoo_f[lo:hi]))
            state.cuckoos[worst] = state.species_best[j]
            state.cuckoo_f[worst] = state.species_best_f[j]

    host = state.owner == HOST
    if np.any(host):
        f = np.where(host, state.egg_f, np.inf)
        h = np.unravel_index(np.argmin(f), f.shape)
        if f[h] < state.host_best_f:
            state.host_best = state.eggs[h].copy()
            state.host_best_f = float(f[h])
            return
        if f[h] == state.host_best_f:
            return
    # best host egg was lost; put it back over the worst egg of all nests
    h = np.unravel_index(np.argmax(state.egg_f), state.egg_f.shape)
    state.eggs[h] = state.host_best
    state.egg_f[h] = state.host_best_f
    state.owner[h] = HOST


def mscs_generation(state: MscsState, problem: Problem, params: MscsParams,
                    rng: np.random.Generator) -> MscsState:
    ev = state.evaluator
    n = params.n

    # egg laying: every cuckoo visits r random nests, in random order
    who = np.repeat(rng.permutation(n), params.r)
    nests = rng.integers(0, params.w, who.size)
    cand = _propose(state, who, problem, params, rng)
    count = ev.affordable(who.size)
    f = ev(cand[:count])
    for e in range(count):
        _place(state, int(who[e]), cand[e], f[e], int(nests[e]))

    for a in range(params.m):
        for b in range(a + 1, params.m):
            species_swap(state, a, b, rng)

    rebuild = np.flatnonzero(state.cuckoo_fraction() > 1.0 - params.p_a)
    rebuild = rebuild[: ev.affordable(rebuild.size * params.q) // params.q]
    if rebuild.size:
        _rebuild(state, rebuild, problem, params, rng)

    _elitism(state)
    state.iteration += 1
    return state


def mscs_run(problem: Problem, params: MscsParams, penalty: PenaltyConfig = DEFAULT_PENALTY,
             rng: Optional[np.random.Generator] = None) -> TrialResult:
    rng = stream(params.seed) if rng is None else rng
    try:
        state = init_state(problem, params, rng, penalty)
    except ArithmeticError as exc:
        raise SearchAborted(str(exc), 0, 0) from exc
    ev = state.evaluator
    trace, fe_trace = [], []
    for _ in range(params.t_max):
        if ev.exhausted:
            break
        try:
            mscs_generation(state, problem, params, rng)
        except ArithmeticError as exc:
            raise SearchAborted(str(exc), state.iteration, ev.fe_used) from exc
        trace.append(ev.best_f)
        fe_trace.append(ev.fe_used)
    if not trace:
        trace, fe_trace = [ev.best_f], [ev.fe_used]
    return _result(problem, ev, trace, fe_trace)
