"""Command-line entry point.

    triflux <command> --config FILE [--seed N] [--out DIR] [--scale F]

Commands: outcome, absorptivity, predict, compare, grid-dump.  Seed and
output directory override the config file; --scale multiplies the
realization counts (useful for smoke runs).  Exit codes: 0 success,
2 configuration or usage error, 3 runtime failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, load_config
from . import pipeline

_COMMANDS = {
    "outcome": pipeline.run_outcome,
    "absorptivity": pipeline.run_absorptivity,
    "predict": pipeline.run_predict,
    "compare": pipeline.run_compare,
    "grid-dump": pipeline.run_grid_dump,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triflux",
        description="Statistical scattering campaigns for bound three-body systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        p.add_argument("--config", required=True, help="campaign configuration (YAML)")
        p.add_argument("--seed", type=int, default=None, help="override the seed")
        p.add_argument("--out", default=None, help="override the output directory")
        p.add_argument("--scale", type=float, default=None,
                       help="multiply realization counts")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("seed must be nonnegative")
            cfg = replace(cfg, seed=args.seed)
        if args.out is not None:
            cfg = replace(cfg, output_dir=args.out)
        if args.scale is not None:
            cfg = cfg.scaled(args.scale)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        summary = _COMMANDS[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for key, value in summary.items():
        print(f"{key}: {value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
