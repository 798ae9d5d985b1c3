"""CS vs MSCS on the benchmark suite with evaluation-matched budgets.

Writes one campaign directory per function plus ``table.csv`` (best and mean
E_f per algorithm) and the f5 convergence trace.

    python scripts/compare_benchmarks.py --dim 10 --trials 100 --out runs/bench
"""

import argparse
import csv
from pathlib import Path

from mscs.benchmarks import CATALOG
from mscs.harness import TRACE_HEADER, ExperimentConfig, fmt_full, fmt_short, run_campaign, trace_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=10)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--iters", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--functions", nargs="*", default=list(CATALOG))
    ap.add_argument("--out", type=Path, default=Path("runs/bench"))
    args = ap.parse_args()

    table, wins = [], 0
    for name in args.functions:
        config = ExperimentConfig(function=name, dim=args.dim, trials=args.trials, t_max=args.iters,
                                  seed=args.seed, out=args.out / name)
        records, summary = run_campaign(config)
        s = {r.algo: r for r in summary}
        wins += s["mscs"].mean_e <= s["cs"].mean_e
        table.append((name, fmt_short(s["cs"].best_e), fmt_short(s["cs"].mean_e),
                      fmt_short(s["mscs"].best_e), fmt_short(s["mscs"].mean_e)))
        print(" ".join(table[-1]), flush=True)
        if name == "f5":
            rows = trace_table(records, args.iters)
            with open(args.out / "trace_f5.csv", "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(TRACE_HEADER)
                w.writerows((i + 1, fmt_full(a), fmt_full(b)) for i, (a, b) in enumerate(rows))

    with open(args.out / "table.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("function", "cs_best", "cs_mean", "mscs_best", "mscs_mean"))
        w.writerows(table)
    print(f"MSCS mean error <= CS on {wins}/{len(args.functions)} functions")


if __name__ == "__main__":
    main()
