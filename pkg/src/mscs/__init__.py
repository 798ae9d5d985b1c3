"""Multi-species cuckoo search, a single-species baseline, and test problems."""

from .benchmarks import CATALOG, SUITE_SEED, TransformSpec, benchmark, eval_raw, make_transformed, suite_catalog
from .cs import CsParams, SearchAborted, TrialResult, cs_run
from .engine import MscsParams, MscsState, init_state, mscs_generation, mscs_run
from .problem import (DEFAULT_PENALTY, EvaluationError, IntegerDim, PenaltyConfig, Problem, clamp_and_snap,
                      error_metric, evaluate_penalized)
from .rng import LevyParams, child_seed, mantegna_sigma, mantegna_step, stream, trial_stream

__all__ = [
    "CATALOG", "DEFAULT_PENALTY", "SUITE_SEED", "CsParams", "EvaluationError", "IntegerDim", "LevyParams",
    "MscsParams", "MscsState", "PenaltyConfig", "Problem", "SearchAborted", "TransformSpec", "TrialResult",
    "benchmark", "child_seed", "clamp_and_snap", "cs_run", "error_metric", "eval_raw", "evaluate_penalized",
    "init_state", "make_transformed", "mantegna_sigma", "mantegna_step", "mscs_generation", "mscs_run",
    "stream", "suite_catalog", "trial_stream",
]
