"""Twenty MSCS runs of each engineering and data case, one report per case.

    python scripts/run_cases.py --out runs/cases [--iris PATH] [--cases spring vessel]
"""

import argparse
from pathlib import Path

from mscs.harness import CASES, ExperimentConfig, run_case


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="*", default=list(CASES), choices=CASES)
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--iris", type=Path)
    ap.add_argument("--out", type=Path, default=Path("runs/cases"))
    args = ap.parse_args()

    for name in args.cases:
        report = run_case(ExperimentConfig(function=name, seed=args.seed, data=args.iris, out=args.out / name),
                          runs=args.runs)
        print(f"[{name}]")
        for key, value in report.rows():
            print(f"  {key}: {value}")


if __name__ == "__main__":
    main()
