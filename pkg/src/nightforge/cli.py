"""Command line entry point: ``nightforge synth`` and ``nightforge report``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .config import PipelineConfig, load_config
from .core import ConfigError
from .pipeline import PipelineError, run_pipeline
from .stats import DEFAULT_BINS, compare_sets

SEED_ENV = "NIGHTFORGE_SEED"


def _seed_arg(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _set_arg(text: str) -> tuple[str, Path]:
    name, sep, directory = text.partition("=")
    if not sep or not name or not directory:
        raise argparse.ArgumentTypeError(f"expected NAME=DIR, got {text!r}")
    return name, Path(directory)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nightforge", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize hazy night / clear day pairs")
    synth.add_argument("--input-dir", type=Path, required=True)
    synth.add_argument("--depth-dir", type=Path, required=True)
    synth.add_argument("--output-dir", type=Path, required=True)
    synth.add_argument("--config", type=Path, help="JSON config file")
    synth.add_argument("--seed", type=_seed_arg, help=f"master seed (fallback: ${SEED_ENV})")
    synth.add_argument("--jobs", type=int)
    synth.add_argument("--strict", action="store_true", help="stop at the first failure")
    synth.add_argument("--sky-mask-dir", type=Path)
    synth.add_argument("--resize", type=int, help="resize inputs to N x N before synthesis")

    report = sub.add_parser("report", help="brightness statistics of image sets")
    report.add_argument("--set", dest="sets", type=_set_arg, action="append", required=True,
                        metavar="NAME=DIR")
    report.add_argument("--out", type=Path, required=True)
    report.add_argument("--bins", type=int, default=DEFAULT_BINS)
    report.add_argument("--channel-means", action="store_true")
    return parser


def _resolve_seed(flag: int | None, config_seed: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env:
        return _seed_arg(env)
    return config_seed if config_seed is not None else 0


def cmd_synth(args: argparse.Namespace) -> int:
    config = load_config(args.config) if args.config else PipelineConfig()
    config = config.with_overrides(
        input_dir=args.input_dir,
        depth_dir=args.depth_dir,
        output_dir=args.output_dir,
        sky_mask_dir=args.sky_mask_dir,
        jobs=args.jobs,
        resize=args.resize,
        strict=args.strict or None,
    )
    if config.jobs < 1:
        raise ConfigError([("jobs", "must be >= 1")])
    config = config.with_overrides(seed=_resolve_seed(args.seed, config.seed))
    manifest = run_pipeline(config)
    print(f"{len(manifest.successes)} succeeded, {len(manifest.failures)} failed")
    for rec in manifest.failures:
        print(f"  FAILED {rec['input']}: {rec['error']}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    if args.bins < 1:
        raise ValueError("--bins must be >= 1")
    names = [name for name, _ in args.sets]
    if len(set(names)) != len(names):
        raise ValueError("set names must be unique")
    summaries = compare_sets(dict(args.sets), args.out, args.bins, args.channel_means)
    for name, st in summaries.items():
        print(f"{name}: luminance mean {st.luminance_mean:.4f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "synth":
            return cmd_synth(args)
        return cmd_report(args)
    except (ConfigError, PipelineError, ValueError, OSError) as exc:
        print(f"nightforge: error: {exc}", file=sys.stderr)
        return 2
