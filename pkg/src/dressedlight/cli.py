"""Command-line interface: sweeps, figure datasets, oracle checks, switching time.

Exit codes: 0 success, 1 validation or comparison failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import __version__
from .core import secular_validity_check
from .oracle import OracleSizeError
from .response import switching_time
from .sweeps import (
    FIGURES,
    ConfigError,
    compare_oracle,
    load_config,
    load_switching_config,
    run_figure,
    run_sweep,
    write_dataset,
    write_oracle_report,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dressedlight",
        description="Collective dressed-state optics of two driven two-level ensembles",
    )
    parser.add_argument("--version", action="version", version=f"dressedlight {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep from a JSON config")
    p_sweep.add_argument("config", help="path to the JSON sweep configuration")
    p_sweep.add_argument("--out", default="sweep.csv", help="output CSV path")
    p_sweep.add_argument("--threads", type=int, default=1, help="worker-thread cap")

    p_fig = sub.add_parser("figure", help="write a preset figure dataset")
    p_fig.add_argument("name", choices=FIGURES, help="figure preset name")
    p_fig.add_argument("--out", default=None, help="output CSV path (default <name>.csv)")
    p_fig.add_argument("--threads", type=int, default=1, help="worker-thread cap")

    p_orc = sub.add_parser("oracle", help="compare analytic results against the dense oracle")
    p_orc.add_argument("config", help="path to a JSON config with an oracle block")
    p_orc.add_argument("--out", default=None, help="optional CSV report path")

    p_sw = sub.add_parser("switching-time", help="collective switching-time estimate")
    p_sw.add_argument("config", help="path to a JSON config with a geometry block")

    return parser


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    report = secular_validity_check(*config.ensembles)
    for line in report.warnings():
        print(f"warning: {line}", file=sys.stderr)
    result = run_sweep(config, threads=max(1, args.threads))
    path = write_dataset(Path(args.out), result)
    print(f"wrote {path} ({len(result.points)} rows)")
    return 0


def _cmd_figure(args) -> int:
    written = run_figure(args.name, out=args.out, threads=max(1, args.threads))
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_oracle(args) -> int:
    config = load_config(args.config)
    report = compare_oracle(config)
    width = max(len(row.setting) for row in report.rows)
    for row in report.rows:
        if row.quantity == "susceptibility" and row.status == "skipped":
            continue
        print(f"{row.quantity:18s} {row.setting:{width}s} "
              f"analytic={row.analytic:+.6e} oracle={row.oracle:+.6e} "
              f"rel_err={row.rel_error:.3e} [{row.status}]")
    for note in report.notes:
        print(note)
    if args.out:
        print(f"wrote {write_oracle_report(Path(args.out), report)}")
    counted = [r for r in report.rows if r.status != "skipped"]
    print(f"{sum(r.status == 'pass' for r in counted)}/{len(counted)} comparisons passed")
    return 0 if report.passed else 1


def _cmd_switching_time(args) -> int:
    geometry, n_atoms = load_switching_config(args.config)
    tau = switching_time(geometry, n_atoms)
    print(json.dumps({"tau_s_seconds": tau}))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "figure":
            return _cmd_figure(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "switching-time":
            return _cmd_switching_time(args)
    except (ConfigError, OracleSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
