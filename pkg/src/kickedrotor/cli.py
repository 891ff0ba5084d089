"""Command line interface: run sweeps, list presets, generate phase-space sections.

Exit codes: 0 success, 2 configuration error, 3 numerical-guard failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, ExperimentConfig
from .harness import default_out_dir, run, run_preset, write_poincare_preset
from .presets import POINCARE_PRESETS, PRESETS, describe_presets

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GUARD = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kickedrotor",
        description="Numerical laboratory for the phase-modulated kicked rotor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a preset or a config file")
    source = run_p.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", help="preset name (see list-presets)")
    source.add_argument("--config", help="path to a config file")
    run_p.add_argument("--out-dir", default=None,
                       help=f"output directory (default: ${'{'}KICKEDROTOR_OUT_DIR{'}'} or ./out)")
    run_p.add_argument("--seed", type=int, default=None, help="override run/ensemble seed")
    run_p.add_argument("--grid", type=int, default=None, help="override momentum grid n_max")
    run_p.add_argument("--kicks", type=int, default=None, help="override kick count")
    run_p.add_argument("--jobs", type=int, default=1, help="parallel sweep workers")

    sub.add_parser("list-presets", help="list preset names and descriptions")

    poi = sub.add_parser("poincare", help="write phase-space section CSVs")
    poi.add_argument("--preset", default="fig7",
                     help=f"section preset ({', '.join(POINCARE_PRESETS)})")
    poi.add_argument("--out-dir", default=None)
    poi.add_argument("--seeds", type=int, default=40, help="seed grid points per axis")
    poi.add_argument("--steps", type=int, default=500, help="map steps per seed")
    return parser


def _apply_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    if args.seed is not None:
        config = config.with_(seed=args.seed, ensemble_seed=args.seed)
    if args.grid is not None:
        config = config.with_(n_max=args.grid)
    if args.kicks is not None:
        config = config.with_(
            kicks=args.kicks,
            snapshot_kicks=tuple(t for t in config.snapshot_kicks if t <= args.kicks),
            localization_kick=(config.localization_kick
                               if config.localization_kick is not None
                               and config.localization_kick <= args.kicks else None),
        )
    return config


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "list-presets":
        width = max(len(name) for name, _ in describe_presets())
        for name, description in describe_presets():
            print(f"{name:<{width}}  {description}")
        return EXIT_OK

    if args.command == "poincare":
        try:
            paths = write_poincare_preset(args.preset, out_dir=args.out_dir,
                                          seeds_per_axis=args.seeds, steps=args.steps)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_CONFIG
        for path in paths:
            print(path)
        return EXIT_OK

    # run
    failures = []
    try:
        if args.preset is not None:
            if args.preset not in PRESETS:
                print(f"error: unknown preset {args.preset!r}; run list-presets",
                      file=sys.stderr)
                return EXIT_CONFIG
            results = run_preset(args.preset, out_dir=args.out_dir, jobs=args.jobs,
                                 seed=args.seed, grid=args.grid, kicks=args.kicks)
        else:
            path = Path(args.config)
            if not path.exists():
                print(f"error: config file not found: {path}", file=sys.stderr)
                return EXIT_CONFIG
            config = _apply_overrides(ExperimentConfig.from_text(path.read_text()), args)
            results = [run(config, out_dir=args.out_dir, jobs=args.jobs)]
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    for result in results:
        for path in result.files:
            print(path)
        failures.extend(result.failures)
    if failures:
        for value, message in failures:
            print(f"guard failure at axis value {value:g}: {message}", file=sys.stderr)
        return EXIT_GUARD
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
