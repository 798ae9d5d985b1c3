"""Command-line entry point: ``mscs bench|trace|case ...``.

``--config FILE`` reads ``key = value`` lines (``#`` starts a comment); keys are
flag names with or without the leading dashes, and file values override flags
given on the command line.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import ALGORITHMS, CASES, ConfigError, ExperimentConfig, emit_trace, run_campaign, run_case
from .rng import LevyParams


def _sizes(text: str) -> tuple:
    return tuple(int(s) for s in text.replace(",", " ").split())


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master seed; trial t uses a child of (seed, t)")
    p.add_argument("--out", type=Path, default=Path("out"))
    p.add_argument("--config", type=Path, help="file of 'key = value' overrides")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--beta", type=float, default=0.01)
    p.add_argument("--lam", type=float, default=1.5)
    p.add_argument("--step-scale", choices=("domain", "best"), default="domain")
    p.add_argument("--p-a", type=float, default=0.25)
    p.add_argument("--species-sizes", type=_sizes, default=(20, 20))
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--w", type=int, default=20)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--population", type=int, default=80, help="CS nest count")


def _bench_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", required=True)
    p.add_argument("--dim", type=int, default=10)
    p.add_argument("--algo", choices=ALGORITHMS, default="both")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--max-fe", type=int)
    p.add_argument("--suite-seed", type=int, help="seed of the shift/rotation data")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mscs", description="Multi-species cuckoo search experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    bench = sub.add_parser("bench", help="multi-trial campaign on one benchmark function")
    _bench_flags(bench)
    _common(bench)
    trace = sub.add_parser("trace", help="median convergence trace of CS and MSCS")
    _bench_flags(trace)
    _common(trace)
    case = sub.add_parser("case", help="20 runs of an engineering or data case")
    case.add_argument("--name", required=True, choices=CASES)
    case.add_argument("--data", type=Path, help="iris.data path")
    case.add_argument("--iters", type=int, default=1000)
    case.add_argument("--runs", type=int, default=20)
    _common(case)
    return parser


def read_config(path: Path) -> dict:
    """Parse ``key = value`` lines into a dict with argparse-style keys."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


def apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace, argv) -> argparse.Namespace:
    if args.config is None:
        return args
    extra = []
    for key, value in read_config(args.config).items():
        if key in ("command", "config"):
            raise ConfigError(f"{key!r} cannot be set from a config file")
        if not hasattr(args, key):
            raise ConfigError(f"unknown config key {key!r} for '{args.command}'")
        extra += [f"--{key.replace('_', '-')}", value]
    # re-parse so values go through the same type conversion and choices as flags
    return parser.parse_args(list(argv) + extra)


def to_config(args: argparse.Namespace) -> ExperimentConfig:
    levy = LevyParams(lam=args.lam, alpha=args.alpha, beta=args.beta, step_scale=args.step_scale)
    common = dict(seed=args.seed, out=args.out, levy=levy, p_a=args.p_a, cs_population=args.population,
                  species_sizes=args.species_sizes, r=args.r, w=args.w, q=args.q, t_max=args.iters)
    if args.command == "case":
        return ExperimentConfig(function=args.name, data=args.data, trials=args.runs, **common)
    extra = {} if args.suite_seed is None else {"suite_seed": args.suite_seed}
    return ExperimentConfig(function=args.function, dim=args.dim, algorithm=args.algo, trials=args.trials,
                            max_fe=args.max_fe, **extra, **common)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = apply_config(parser, parser.parse_args(argv), argv)
        config = to_config(args)
        if args.command == "bench":
            _, summary = run_campaign(config)
            for row in summary:
                print(f"{row.problem} {row.algo}: best_e={row.best_e:.3e} mean_e={row.mean_e:.3e} "
                      f"fe_mean={row.fe_mean:.0f}")
        elif args.command == "trace":
            table = emit_trace(config)
            print(f"final median best: cs={table[-1, 0]:.6g} mscs={table[-1, 1]:.6g}")
        else:
            report = run_case(config, runs=args.runs)
            for key, value in report.rows():
                print(f"{key}: {value}")
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {config.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
