"""
Evolve command - run the JKO scheme from the configured initial data.
"""

import sys

import click

from ksjko.commands.base_commands import (
    EXIT_SOLVER_ERROR,
    exit_on_error,
    make_run_context,
    run_options,
)
from ksjko.formatters.writer import write_outputs
from ksjko.utils.logger import logger


@click.command("evolve")
@run_options
@click.pass_context
@exit_on_error
def evolve(ctx: click.Context, **options) -> None:
    """
    Run the minimizing-movement scheme up to time T.

    Writes timeseries.csv, snapshots, summary.json and plots to the output
    directory. Exits with status 1 if an energy check fails.

    Examples:

        # Ornstein-Uhlenbeck benchmark
        ksjko evolve --config test-samples/ou.json --out runs/ou

        # Every step as a snapshot, no console table
        ksjko evolve -c run.json --stride 1 --quiet
    """
    run = make_run_context(ctx, **options)
    logger.info(f"Evolving chi={run.spec.chi:g}, tau={run.spec.tau:g}, T={run.spec.T:g}")

    result = run.pipeline.run_evolve()
    write_outputs(
        result, run.out_dir, stride=run.spec.output.stride, plots=run.spec.output.plots
    )
    run.finish(result.summary)

    if not result.passed:
        failed = [name for name, ok in result.summary["checks"].items() if not ok]
        logger.error(f"Checks failed: {', '.join(failed)}")
        sys.exit(EXIT_SOLVER_ERROR)
