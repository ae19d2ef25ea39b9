"""``qha`` command-line driver.

Exit codes: 0 when every asserted report passes, 1 when any fails, 2 for
bad configuration or arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import checks
from .config import ConfigError, GridConfig, RunConfig, load_config
from .fourier_wigner import hausdorff_young_report
from .grid import PhaseGrid
from .io import write_series_csv
from .multiplier import bochner_riesz, bump_family, constant_symbol, sine_symbol, symbol_from_config
from .multiplier.experiments import (
    equivalence_experiment,
    gaussian_weyl_experiment,
    m_at_zero_recovery,
    modulation_probe,
    parity_limit_experiment,
    trace_probe_question,
)
from .report import ExperimentReport
from .tf_core import symplectic_ft

COMMANDS = (
    "verify",
    "hausdorff-young",
    "werner-young",
    "bochner-riesz",
    "gaussian-weyl",
    "equivalence",
    "parity-limit",
    "m-at-zero",
    "trace-probe",
    "modulation-probe",
    "refine",
)


def _number(s: str) -> float:
    s = s.strip()
    if s in ("inf", "infinity"):
        return float("inf")
    return float(Fraction(s)) if "/" in s else float(s)


def _number_list(s: str) -> list[float]:
    try:
        return [_number(v) for v in s.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}") from None


def _name_list(s: str) -> list[str]:
    return [v.strip() for v in s.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qha", description="Quantum harmonic analysis experiments on a phase-space lattice.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", type=Path, help="JSON run config")
    ap.add_argument("--out", type=Path, default=Path("qha-out"), help="output directory (default ./qha-out)")
    ap.add_argument("--frozen-clock", action="store_true", help="omit wall-clock timestamps from reports")
    ap.add_argument("--n", type=int, help="grid size")
    ap.add_argument("--length", type=float, help="box length L")
    ap.add_argument("--seed", type=int, help="random seed")
    ap.add_argument("--eps2", type=_number_list, help="comma-separated eps^2 values")
    ap.add_argument("--symbol", help="symbol family: bochner_riesz, gaussian, sine, constant, csv")
    ap.add_argument("--delta", type=_number_list, help="Bochner-Riesz exponent(s)")
    ap.add_argument("--eps", type=float, help="Gaussian symbol width")
    ap.add_argument("--value", type=complex, help="constant symbol value")
    ap.add_argument("--path", help="CSV symbol table")
    ap.add_argument("--p", type=_number_list, help="comma-separated exponents (fractions allowed, e.g. 4/3)")
    ap.add_argument("--q", type=_number_list, help="comma-separated exponents for the modulation probe")
    ap.add_argument("--ladder", type=_number_list, help="grid sizes for refine, e.g. 64,128,256")
    ap.add_argument("--exclude", type=_name_list, default=[], help="verify: checks to skip")
    ap.add_argument("--only", type=_name_list, help="verify: run only these checks")
    return ap


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    grid = cfg.grid
    if args.n is not None or args.length is not None:
        grid = GridConfig(args.n if args.n is not None else grid.n, args.length if args.length is not None else grid.length)
    symbol = cfg.symbol
    if args.symbol:
        symbol = {"family": args.symbol}
        if args.delta:
            symbol["delta"] = args.delta[0]
        if args.eps is not None:
            symbol["eps"] = args.eps
        if args.value is not None:
            symbol["value"] = args.value
        if args.path:
            symbol["path"] = args.path
    return replace(cfg, grid=grid, seed=cfg.seed if args.seed is None else args.seed, symbol=symbol)


def _param(args, cfg: RunConfig, name: str, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return cfg.params.get(name, default)


def run_command(args, cfg: RunConfig) -> list[ExperimentReport]:
    pg = cfg.grid.build()
    budget = cfg.make_budget()
    ctx = checks.CheckContext(pg, cfg.seed, budget)
    cmd = args.command
    sym = symbol_from_config(pg, cfg.symbol) if cfg.symbol else None

    if cmd == "verify":
        names = args.only or cfg.params.get("only") or list(checks.CHECKS)
        skip = set(args.exclude) | set(cfg.params.get("exclude", []))
        unknown = (set(names) | skip) - set(checks.CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks {sorted(unknown)}; known: {', '.join(checks.CHECKS)}")
        return checks.run_checks(ctx, [n for n in names if n not in skip])
    if cmd == "hausdorff-young":
        ens = checks.trace_class_ensemble(ctx, 20, 9)
        return [hausdorff_young_report(ens, p) for p in _param(args, cfg, "p", [2.0, 1.0, 4 / 3])]
    if cmd == "werner-young":
        return checks.check_werner_young(ctx)
    if cmd == "bochner-riesz":
        deltas = _param(args, cfg, "delta", [0.0, 0.5, 1.0])
        return [checks.bochner_riesz_report(ctx.estimation_grid, deltas, p, budget) for p in _param(args, cfg, "p", [1.0])]
    if cmd == "gaussian-weyl":
        return [gaussian_weyl_experiment(pg, tuple(_param(args, cfg, "eps2", [0.3, 0.45, 0.5, 0.55, 1.0])))]
    if cmd == "equivalence":
        epg = ctx.estimation_grid
        family = [symbol_from_config(epg, cfg.symbol)] if cfg.symbol else bump_family(epg, 2.0)
        return [equivalence_experiment(family, p, budget) for p in _param(args, cfg, "p", [1.0, 4 / 3, 2.0])]
    if cmd == "parity-limit":
        return [parity_limit_experiment(pg, tuple(_param(args, cfg, "eps2", [0.5, 0.25, 0.1, 0.05, 0.02])))]
    if cmd == "m-at-zero":
        syms = [sym] if sym else [constant_symbol(pg), bochner_riesz(pg, 1.0), sine_symbol(pg)]
        return [m_at_zero_recovery(m) for m in syms]
    if cmd == "trace-probe":
        return [trace_probe_question(pg, seed=cfg.seed)]
    if cmd == "modulation-probe":
        n = args.n if args.n is not None else int(cfg.params.get("n", 32))
        spg = PhaseGrid.square(n)
        m = symbol_from_config(spg, cfg.symbol) if cfg.symbol else bochner_riesz(spg, 1.0)
        F = symplectic_ft(m.table)
        qs = _param(args, cfg, "q", [1.0, 2.0, 4.0])
        vals = [modulation_probe(F, q) for q in qs]
        return [
            ExperimentReport(
                "modulation_probe",
                {"symbol": m.name, "n": n, "grid": "square"},
                vals,
                max(vals),
                None,
                None,
                series={"rows": [{"q": q, "value": v} for q, v in zip(qs, vals)]},
            )
        ]
    if cmd == "refine":
        ladder = [int(v) for v in _param(args, cfg, "ladder", [64, 128, 256])]
        return checks.refinement_ladder(ladder, cfg.grid.length, cfg.seed)
    raise ConfigError(f"unknown command {cmd}")  # pragma: no cover


def write_outputs(out: Path, command: str, cfg: RunConfig, reports: list[ExperimentReport], frozen: bool) -> None:
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i, r in enumerate(reports):
        stem = f"{i:02d}_{r.name}"
        (out / f"{stem}.json").write_text(r.to_json() + "\n")
        rows = r.series.get("rows") if isinstance(r.series.get("rows"), list) else None
        if rows and all(isinstance(row, dict) for row in rows):
            write_series_csv(rows, out / f"{stem}.csv")
        else:
            write_series_csv([{"index": k, "ratio": v} for k, v in enumerate(r.ratios)], out / f"{stem}.csv")
        files.append(stem)
    manifest = {
        "command": command,
        "config": cfg.to_dict(),
        "created": "frozen" if frozen else datetime.now(timezone.utc).isoformat(),
        "reports": [{"file": f, "name": r.name, "pass": r.passed} for f, r in zip(files, reports)],
        "pass": all(r.passed is not False for r in reports),
    }
    (out / "run.json").write_text(json.dumps(manifest, indent=2, default=str) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        reports = run_command(args, cfg)
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"qha: error: {exc}", file=sys.stderr)
        return 2
    write_outputs(args.out, args.command, cfg, reports, args.frozen_clock)
    for r in reports:
        print(r.summary())
    failing = [r for r in reports if r.passed is False]
    for r in failing:
        print(f"failed: {r.name} {r.params}" + (f" notes={r.notes}" if r.notes else ""), file=sys.stderr)
    return 1 if failing else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
