"""
Sweep command - decay rates over a grid of coupling strengths.
"""

import sys
from typing import Optional

import click

from ksjko.commands.base_commands import (
    EXIT_SOLVER_ERROR,
    exit_on_error,
    make_run_context,
    run_options,
)
from ksjko.utils.logger import logger


@click.command("sweep")
@run_options
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker count (default: sweep.threads, then CPU count); KSJKO_THREADS caps it",
)
@click.pass_context
@exit_on_error
def sweep(ctx: click.Context, threads: Optional[int], **options) -> None:
    """
    Run decay-rate for every chi in sweep.chi, each in its own chi_<value>/ directory.

    Exits with status 1 if any point failed; the other points are still written.
    """
    run = make_run_context(ctx, **options)
    summary = run.pipeline.run_sweep(run.out_dir, threads=threads)
    run.finish(summary)

    failed = [row["chi"] for row in summary["points"] if row["status"] != "ok"]
    if failed:
        logger.error(f"{len(failed)} sweep point(s) failed: {failed}")
        sys.exit(EXIT_SOLVER_ERROR)
