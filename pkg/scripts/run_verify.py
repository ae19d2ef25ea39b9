"""Run every built-in check on the default lattice and print one line per report.

    python scripts/run_verify.py [--n 128] [--out verify-out]
"""
import argparse
import sys
from pathlib import Path

from qha.checks import CHECKS, CheckContext, run_checks
from qha.cli import write_outputs
from qha.config import GridConfig, RunConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--length", type=float, default=12.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("verify-out"))
    args = ap.parse_args()
    cfg = RunConfig(grid=GridConfig(args.n, args.length), seed=args.seed)
    ctx = CheckContext(cfg.grid.build(), cfg.seed, cfg.make_budget())
    reports = run_checks(ctx, list(CHECKS))
    write_outputs(args.out, "verify", cfg, reports, frozen=True)
    for r in reports:
        print(r.summary())
    return 1 if any(r.passed is False for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
