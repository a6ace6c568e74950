"""
Check-invariants command - randomized property suite around the equilibrium.
"""

import sys

import click

from ksjko.commands.base_commands import (
    EXIT_SOLVER_ERROR,
    exit_on_error,
    make_run_context,
    run_options,
)
from ksjko.utils.logger import logger


@click.command("check-invariants")
@run_options
@click.pass_context
@exit_on_error
def check_invariants(ctx: click.Context, **options) -> None:
    """
    Check the Lyapunov decomposition, sandwich bounds, Csiszar-Kullback
    inequality and round-trip mass on random smooth states.

    The sample count is diagnostics.n_samples; --seed fixes the draw.
    """
    run = make_run_context(ctx, **options)
    report, summary = run.pipeline.run_check_invariants()
    run.finish(summary)

    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        logger.error(f"Invariant checks failed: {', '.join(failed)}")
        sys.exit(EXIT_SOLVER_ERROR)
