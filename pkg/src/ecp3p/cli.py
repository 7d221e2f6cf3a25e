"""``p3p-bench`` command line entry point."""

from __future__ import annotations

import argparse
import csv
import sys
from typing import List, Optional

from .bench import (
    CSV_COLUMNS,
    HIST_COLUMNS,
    ConfigError,
    TrialConfig,
    csv_rows,
    format_table,
    load_triangle,
    run_experiment,
)
from .errors import ExhaustedSampling

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SAMPLING = 3


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p3p-bench", description="Synthetic P3P accuracy benchmark.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one trial configuration")
    run.add_argument("--method", choices=("ec", "lt", "both"), default="both")
    run.add_argument("--triangle", default="acute", help="acute, obtuse or file:<path>")
    run.add_argument("--attack-min", type=float, default=0.0, help="degrees")
    run.add_argument("--attack-max", type=float, default=30.0, help="degrees")
    run.add_argument("--lift-min", type=float, default=100.0)
    run.add_argument("--lift-max", type=float, default=200.0)
    run.add_argument("--trials", type=int, default=1000)
    run.add_argument("--seed", type=_u64, default=0)
    run.add_argument("--format", choices=("table", "csv"), default="table")
    run.add_argument("--hist", action="store_true", help="include decade histogram")
    run.add_argument("--serial", action="store_true", help="run in this process only")
    run.add_argument("--workers", type=int, default=None, help="pool size (default: CPU count)")
    return ap


def _config(ns: argparse.Namespace) -> TrialConfig:
    tri = ns.triangle
    vertices = None
    if tri.startswith("file:"):
        try:
            vertices = load_triangle(tri[5:])
        except OSError as exc:
            raise ConfigError(str(exc)) from None
    return TrialConfig(
        method=ns.method,
        triangle=tri,
        attack_range=(ns.attack_min, ns.attack_max),
        lift_range=(ns.lift_min, ns.lift_max),
        trials=ns.trials,
        seed=ns.seed,
        vertices=vertices,
    )


def main(argv: Optional[List[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = _config(ns)
        if ns.workers is not None and ns.workers < 1:
            raise ConfigError("workers must be >= 1")
    except ConfigError as exc:
        print(f"p3p-bench: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        stats = run_experiment(cfg, serial=ns.serial, workers=ns.workers)
    except ExhaustedSampling as exc:
        print(f"p3p-bench: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    if ns.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(CSV_COLUMNS + (HIST_COLUMNS if ns.hist else ()))
        w.writerows(csv_rows(cfg, stats, hist=ns.hist))
    else:
        print(format_table(cfg, stats, hist=ns.hist))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
