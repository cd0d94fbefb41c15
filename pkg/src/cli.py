"""
Command-line driver.

Usage:
    lab cube --n 4 --p 0.5 --seed 7
    lab all --seed 42 --out report.json
    lab empirical --config run.json --format csv
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger
from rich.console import Console
from rich.table import Table

# Import registry to auto-register suites
from .core import registry  # noqa: F401

from .config import get_settings
from .core.errors import LabError
from .core.orchestrator import run_lab, write_summary
from .core.report import LabSummary
from .core.run_config import ALL_SUITES, ReportFormat, RunConfig
from .core.suite import get_suite_registry

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def configure_logging(level: Optional[str] = None) -> None:
    """Single stderr sink; stdout is reserved for reports"""
    logger.remove()
    logger.add(
        sys.stderr,
        level=level or get_settings().log_level,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
    )


def build_parser() -> argparse.ArgumentParser:
    suites = get_suite_registry().names()
    parser = argparse.ArgumentParser(
        prog="lab", description="Numerical verification of concentration inequalities"
    )
    parser.add_argument(
        "suite",
        nargs="?",
        choices=[*suites, ALL_SUITES],
        help="Suite to run, or 'all'",
    )
    parser.add_argument("--n", type=int, help="Dimension / number of coordinates")
    parser.add_argument("--p", type=float, help="Cube bias in (0, 1)")
    parser.add_argument("--N", type=int, help="Family size for empirical suprema")
    parser.add_argument("--seed", type=int, help="Root seed, 0 <= seed < 2^64 (default: LAB_SEED)")
    parser.add_argument("--samples", type=int, help="Monte Carlo draws (default: 20000)")
    parser.add_argument("--tol", type=float, help="Tolerance override for every report")
    parser.add_argument("--out", type=Path, help="Report path (default: stdout)")
    parser.add_argument(
        "--format", choices=[f.value for f in ReportFormat], help="Report format (default: json)"
    )
    parser.add_argument("--config", type=Path, help="JSON run configuration; flags win")
    parser.add_argument("--instances", type=int, help="Seeded instances per suite")
    parser.add_argument("--threads", type=int, help="Worker threads (default: LAB_THREADS)")
    parser.add_argument(
        "--timings", action="store_true", default=None, help="Include wall times in the report"
    )
    parser.add_argument(
        "--list-suites", action="store_true", help="List all available suites and exit"
    )
    return parser


def print_summary(summary: LabSummary, console: Console) -> None:
    """Human-readable table on stderr"""
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Suite", style="cyan")
    table.add_column("Instances", justify="right")
    table.add_column("Reports", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Min margin", justify="right")

    for suite in summary.suites:
        failures = f"[red]{suite.failures}[/red]" if suite.failures else "[green]0[/green]"
        margin = "-" if suite.min_margin is None else f"{suite.min_margin:.3e}"
        table.add_row(
            suite.suite, str(suite.instances), str(len(suite.reports)), failures, margin
        )

    console.print(table)


def list_suites(console: Console) -> None:
    table = Table(show_header=True, header_style="bold green")
    table.add_column("Suite", style="cyan")
    table.add_column("Module")
    table.add_column("Description")
    for suite in get_suite_registry().list_all():
        table.add_row(suite.metadata.name, suite.metadata.module, suite.metadata.description)
    console.print(table)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    console = Console(stderr=True)

    if args.list_suites:
        list_suites(console)
        return EXIT_PASS
    if args.suite is None:
        parser.error("a suite name is required")

    flags = {
        key: value
        for key, value in vars(args).items()
        if key not in ("config", "list_suites")
    }
    try:
        config = RunConfig.from_sources(flags, args.config)
        summary = run_lab(config)
        write_summary(summary, config)
    except LabError as e:
        logger.error(f"✗ {type(e).__name__}: {e}")
        return EXIT_ERROR

    print_summary(summary, console)
    return EXIT_VIOLATION if summary.failures else EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
