#!/usr/bin/env python3
"""
Command-line entry point.

Exit codes: 0 success, 1 usage, 2 invalid input, 3 internal consistency
failure.
"""

from pathlib import Path
from typing import List, Optional
import argparse
import json
import logging
import sys

from models.config import Method, OutputFormat, RunConfig
from models.errors import ConsistencyError, ValidationFailure
from reporting.tables import render
from reporting.weight_diagram import weight_figure, write_svg
from utils.config_manager import ConfigManager, load_settings
from .commands import COMMANDS, CommandReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_CONSISTENCY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; usage errors here are exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", "-D", type=int, default=None, help="Truncation degree D")
    common.add_argument("--method", choices=[m.value for m in Method], default=Method.KOSZUL.value,
                        help="Tor construction; 'all' cross-checks the three")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=OutputFormat.TABLE.value, help="Output format")
    common.add_argument("--out", dest="output_path", type=Path, default=None, help="Write output here")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized inputs")
    common.add_argument("--workers", type=int, default=None, help="Threads for per-degree slices")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    parser = _Parser(prog="emweights", description="Weight-filtered Eilenberg-Moore computations")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)

    tor = commands.add_parser("tor", parents=[common], help="Tor and weights of a graded module")
    tor.add_argument("input", help="Module JSON, Tor JSON, or bundled module name")
    tor.add_argument("--right", help="Second argument N (module JSON); default Q")

    toric = commands.add_parser("toric", parents=[common], help="Cohomology of a toric variety from its fan")
    toric.add_argument("input", help="Fan JSON or bundled fan name")

    strata = commands.add_parser("strata", parents=[common], help="Equivariant series of an orbit stratification")
    strata.add_argument("input", help="Stratification JSON or bundled name")
    strata.add_argument("--group", help="Group G acting; enables recovery of H*(X)")
    strata.add_argument("--module", help="H*_G(X) as a module JSON")
    strata.add_argument("--fan", help="Take H*_G(X) as the Stanley-Reisner module of this fan")

    group = commands.add_parser("group", parents=[common], help="Weighted cohomology of G and BG")
    group.add_argument("input", help="Group spec, e.g. SL:3, torus:2, G2, custom:[4,6]")

    ss = commands.add_parser("ss", parents=[common], help="Pages of the bar-degree spectral sequence")
    ss.add_argument("input", nargs="?", help="Module JSON or bundled module name")
    ss.add_argument("--random", action="store_true", help="Use a random filtered complex (see --seed)")
    ss.add_argument("--assume-pure", dest="assume_pure", action="store_true",
                    help="Inputs are pure: tag weights and print the degeneration certificate")

    selftest = commands.add_parser("selftest", parents=[common], help="Run the built-in acceptance checks")
    selftest.add_argument("--quick", action="store_true", help="Fewer random instances")
    return parser


def make_config(args: argparse.Namespace, default_workers: int) -> RunConfig:
    options = {
        key: getattr(args, key)
        for key in ("right", "group", "module", "fan", "random", "quick")
        if getattr(args, key, None)
    }
    inputs = [args.input] if getattr(args, "input", None) else []
    return RunConfig(
        command=args.command,
        inputs=inputs,
        degree=args.degree,
        method=args.method,
        output_format=args.output_format,
        output_path=args.output_path,
        seed=args.seed,
        assume_pure=getattr(args, "assume_pure", False),
        workers=args.workers or default_workers,
        options=options,
    )


def format_report(report: CommandReport, config: RunConfig) -> str:
    fmt = config.output_format
    if fmt == OutputFormat.JSON:
        return json.dumps(report.data, indent=2, sort_keys=True)
    if fmt == OutputFormat.CSV:
        parts = []
        for name, frame in report.frames.items():
            parts.append(f"# {name}")
            parts.append(render(frame, "csv").rstrip("\n"))
        return "\n".join(parts)
    parts = list(report.lines)
    for name, frame in report.frames.items():
        parts.append("")
        parts.append(f"[{name}]")
        parts.append(render(frame, "table"))
    return "\n".join(parts)


def emit(report: CommandReport, config: RunConfig) -> None:
    if config.output_format == OutputFormat.SVG:
        if report.weights is None:
            raise ValidationFailure(f"{report.command} has no weight table to draw")
        path = config.output_path or Path(f"{report.command}_weights.svg")
        write_svg(weight_figure(report.weights, report.title), path)
        print(f"wrote {path}")
        return
    text = format_report(report, config)
    if config.output_path:
        config.output_path.parent.mkdir(parents=True, exist_ok=True)
        config.output_path.write_text(text + "\n", encoding="utf-8")
        print(f"wrote {config.output_path}")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        settings = load_settings()
    except ValueError as e:
        print(f"❌ invalid settings: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, settings.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = make_config(args, settings.workers)
        manager = ConfigManager(settings.data_dir)
        if config.command == "selftest":
            from .selftest import run_selftest

            return run_selftest(config, manager, settings)
        report = COMMANDS[config.command](config, manager, settings)
        emit(report, config)
        return EXIT_OK
    except ConsistencyError as e:
        logger.error(f"Consistency failure: {e}")
        print(f"❌ consistency failure ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ValidationFailure, ValueError, FileNotFoundError) as e:
        logger.error(f"Invalid input: {e}")
        print(f"❌ invalid input ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
