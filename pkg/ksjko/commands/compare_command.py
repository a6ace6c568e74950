"""
Compare command - JKO scheme against the finite-difference oracle.
"""

import click

from ksjko.commands.base_commands import exit_on_error, make_run_context, run_options
from ksjko.formatters.writer import write_comparison


@click.command("compare")
@run_options
@click.pass_context
@exit_on_error
def compare(ctx: click.Context, **options) -> None:
    """
    Run both solvers on the same data and report their gaps over time.

    Writes comparison.csv (t, W2_u, L1_u, L2_v, H1_v) and summary.json.
    """
    run = make_run_context(ctx, **options)
    result = run.pipeline.run_compare()
    write_comparison(result.report, run.out_dir)
    run.finish(result.summary)
