"""
Command Line
============
Subcommands ``spectrum``, ``first``, ``figure``, ``verify`` and ``diamagnetic``.

Exit codes: 0 success, 1 failing checks or a library error, 2 invalid
arguments, 3 pole or excluded points.
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from typing import get_args

import numpy as np
import structlog
from pydantic import ValidationError

from magsteklov.config import settings
from magsteklov.core.diamagnetic import check_violation
from magsteklov.core.spectra import spectrum as enumerate_spectrum
from magsteklov.errors import InvalidArgumentError, MagSteklovError, PoleError
from magsteklov.jobs.reports import ReportWriter
from magsteklov.jobs.verify import VerificationSuite
from magsteklov.schemas.reports import Domain, FigureName, OutputFormat, RunConfig
from magsteklov.services.curves import figure_data, first_eigenvalue_curve

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_POLE = 3

DIAMAGNETIC_GRID = (0.0, 2.0, 51)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magsteklov",
        description="Magnetic Hodge and Steklov spectra on S1, S3, B2 and B4.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--format", choices=get_args(OutputFormat), default="csv")
        sub.add_argument("--out", help="output path (default: stdout)")

    def t_range(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--t", type=float, help="single coupling value")
        sub.add_argument("--t-start", type=float)
        sub.add_argument("--t-stop", type=float)
        sub.add_argument("--t-steps", type=int)

    spectrum = commands.add_parser("spectrum", help="eigenvalue table at one t")
    spectrum.add_argument("--domain", choices=get_args(Domain), required=True)
    spectrum.add_argument("--t", type=float, required=True)
    spectrum.add_argument("--k-max", type=int)
    common(spectrum)

    first = commands.add_parser("first", help="first eigenvalue at one t or over a range")
    first.add_argument("--domain", choices=get_args(Domain), required=True)
    t_range(first)
    first.add_argument("--k-max", type=int)
    common(first)

    figure = commands.add_parser("figure", help="regenerate figure data")
    figure.add_argument("figure", choices=get_args(FigureName))
    figure.add_argument("--k-max", type=int)
    figure.add_argument("--t-steps", type=int, help="samples per curve")
    common(figure)

    verify = commands.add_parser("verify", help="run the verification suite")
    verify.add_argument("--tolerance", type=float, help="override relative tolerances")
    verify.add_argument("--only", help="run a single named check")
    verify.add_argument("--n", type=int, help="ball half-dimension for harmonic-extension")
    verify.add_argument("--out", help="output path (default: stdout)")

    diamagnetic = commands.add_parser("diamagnetic", help="bound and violation report")
    diamagnetic.add_argument("--domain", choices=["b2", "b4"], required=True)
    t_range(diamagnetic)
    common(diamagnetic)

    return parser


def _to_config(args: argparse.Namespace) -> RunConfig:
    fields = {key: value for key, value in vars(args).items() if value is not None}
    return RunConfig(**fields)


def cmd_spectrum(config: RunConfig) -> int:
    """Spectrum table; exit 3 after writing when pole points were excluded."""
    assert config.domain is not None and config.t is not None
    result = enumerate_spectrum(config.domain, config.t, config.k_max)
    ReportWriter(config.out).write_spectrum(result, config.format)
    if result.excluded:
        for point in result.excluded:
            print(
                f"excluded {point.mode.label()} at t={point.t}: {point.reason}", file=sys.stderr
            )
        return EXIT_POLE
    return EXIT_OK


def cmd_first(config: RunConfig) -> int:
    assert config.domain is not None
    grid = config.t_grid(settings.figure_samples)
    rows = first_eigenvalue_curve(config.domain, grid, config.k_max)
    table = [(t, value, mode.family.value, mode.k, mode.p) for t, value, mode in rows]
    ReportWriter(config.out).write_rows(["t", "value", "family", "k", "p"], table, config.format)
    return EXIT_OK


def cmd_figure(config: RunConfig) -> int:
    assert config.figure is not None
    data = figure_data(config.figure, config.k_max, config.t_steps)
    ReportWriter(config.out).write_columns(
        data.columns, config.format, data.x_label, data.y_label, data.name
    )
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    """JSON verification report; exit 1 unless every check passes."""
    report = VerificationSuite().run(only=config.only, tolerance=config.tolerance, n=config.n)
    ReportWriter(config.out).write_document(report.to_document())
    if not report.passed:
        for check in report.checks:
            if check.status != "pass":
                print(
                    f"{check.status}: {check.name} max_error={check.max_error} "
                    f"tolerance={check.tolerance}",
                    file=sys.stderr,
                )
        return EXIT_FAILED
    return EXIT_OK


def cmd_diamagnetic(config: RunConfig) -> int:
    assert config.domain is not None
    if config.t is None and config.t_start is None:
        start, stop, steps = DIAMAGNETIC_GRID
        grid = np.linspace(start, stop, steps).tolist()
    else:
        grid = config.t_grid(DIAMAGNETIC_GRID[2])
    report = check_violation(config.domain, grid)
    ReportWriter(config.out).write_violation(report, config.format)
    return EXIT_OK


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "spectrum": cmd_spectrum,
    "first": cmd_first,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "diamagnetic": cmd_diamagnetic,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    try:
        config = _to_config(args)
        return COMMANDS[config.command](config)
    except (ValidationError, InvalidArgumentError) as e:
        print(f"invalid arguments: {e}", file=sys.stderr)
        return EXIT_INVALID
    except PoleError as e:
        print(f"pole: {e}", file=sys.stderr)
        return EXIT_POLE
    except MagSteklovError as e:
        logger.error("Command failed", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
