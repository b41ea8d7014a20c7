"""Command-line interface for spatchy."""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

import numpy as np

from spatchy import __version__

from .bench import REFERENCE_NOTE, benchmark
from .convert import convert, eval_tensor
from .formats import (
    load_spatch,
    load_trimmed,
    sample_mesh,
    save_text,
    spatch_to_json,
    trimmed_to_json,
)
from .report import build_report
from .samples import DEFAULT_SAMPLES, dome_spatch, random_spatch
from .spatch import eval_uv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that exits with the validation status on bad usage."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _parse_uv(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected u,v but got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected two numbers but got {text!r}") from e


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer but got {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _format_point(point: np.ndarray) -> str:
    return " ".join(f"{x:.17g}" for x in point)


# =============================================================================
# Subcommands
# =============================================================================


def _cmd_convert(args: argparse.Namespace) -> int:
    patch = load_spatch(args.input)
    stage_times: dict[str, float] = {}
    trimmed = convert(
        patch, algorithm=args.algo, bracketing=args.bracketing, stage_times=stage_times
    )
    save_text(trimmed_to_json(trimmed), args.output)
    logger.info("Wrote %s", args.output)

    if args.mesh is not None:
        save_text(sample_mesh(trimmed, args.resolution).to_obj(), args.mesh)
        logger.info("Wrote %s", args.mesh)

    report = build_report(patch, trimmed, stage_times=stage_times, samples=args.samples)
    if args.report is not None:
        save_text(report.to_json(), args.report)
        logger.info("Wrote %s", args.report)
    print(report.summary())
    return EXIT_OK


def _cmd_eval(args: argparse.Namespace) -> int:
    u, v = args.at
    if args.tensor:
        point = eval_tensor(load_trimmed(args.input).patch, u, v)
    else:
        point = eval_uv(load_spatch(args.input), (u, v))
    print(_format_point(point))
    return EXIT_OK


def _cmd_mesh(args: argparse.Namespace) -> int:
    surface = load_trimmed(args.input) if args.tensor else load_spatch(args.input)
    save_text(sample_mesh(surface, args.resolution).to_obj(), args.output)
    logger.info("Wrote %s", args.output)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    elapsed = benchmark(args.sides, args.depth, args.algo, args.seed)
    print(
        f"{args.algo} composition, n={args.sides}, d={args.depth}, "
        f"seed {args.seed}: {elapsed:.1f} ms"
    )
    print(REFERENCE_NOTE)
    return EXIT_OK


def _cmd_sample(args: argparse.Namespace) -> int:
    if args.random:
        patch = random_spatch(args.sides, args.depth, args.seed)
    else:
        patch = dome_spatch(args.sides, args.depth)
    save_text(spatch_to_json(patch), args.output)
    logger.info("Wrote %s", args.output)
    return EXIT_OK


# =============================================================================
# Entry points
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with all subcommands."""
    parser = _ArgumentParser(
        prog="spatchy",
        description="Convert S-patches into trimmed rational Bézier patches",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress (-v) or stage details (-vv)",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = commands.add_parser("convert", help="Convert an S-patch JSON file")
    p.add_argument("input", type=Path, help="S-patch JSON file")
    p.add_argument("-o", "--output", type=Path, required=True, help="Trimmed patch JSON output")
    p.add_argument("--mesh", type=Path, metavar="OBJ", help="Also write a sampled OBJ mesh")
    p.add_argument(
        "--resolution", type=_positive_int, default=32, help="Mesh resolution (default: 32)"
    )
    p.add_argument("--report", type=Path, metavar="JSON", help="Write the diagnostics report")
    p.add_argument(
        "--samples",
        type=_positive_int,
        default=DEFAULT_SAMPLES,
        help="Interior samples for the report",
    )
    p.add_argument("--algo", choices=("efficient", "naive"), default="efficient")
    p.add_argument("--bracketing", choices=("left", "right"), default="left")
    p.set_defaults(handler=_cmd_convert)

    p = commands.add_parser("eval", help="Evaluate a surface at a domain point")
    p.add_argument("input", type=Path, help="S-patch JSON file")
    p.add_argument("--at", type=_parse_uv, required=True, metavar="U,V")
    p.add_argument("--tensor", action="store_true", help="Input is a converted patch")
    p.set_defaults(handler=_cmd_eval)

    p = commands.add_parser("mesh", help="Write an OBJ mesh of a surface")
    p.add_argument("input", type=Path, help="S-patch JSON file")
    p.add_argument("-o", "--output", type=Path, required=True, help="OBJ output")
    p.add_argument(
        "--resolution", type=_positive_int, default=32, help="Mesh resolution (default: 32)"
    )
    p.add_argument("--tensor", action="store_true", help="Input is a converted patch")
    p.set_defaults(handler=_cmd_mesh)

    p = commands.add_parser("bench", help="Time the quadrilateral composition")
    p.add_argument("--sides", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--algo", choices=("efficient", "naive"), default="efficient")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_bench)

    p = commands.add_parser("sample", help="Write a sample S-patch JSON file")
    p.add_argument("--sides", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--random", action="store_true", help="Random net instead of a dome")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.set_defaults(handler=_cmd_sample)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit status."""
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except ArithmeticError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    """Entry point for the spatchy command."""
    sys.exit(run())


if __name__ == "__main__":
    main()
