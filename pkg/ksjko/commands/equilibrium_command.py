"""
Equilibrium command - Picard solve for the stationary pair.
"""

import click

from ksjko.commands.base_commands import exit_on_error, make_run_context, run_options
from ksjko.formatters.writer import write_field
from ksjko.utils.logger import logger


@click.command("equilibrium")
@run_options
@click.pass_context
@exit_on_error
def equilibrium(ctx: click.Context, **options) -> None:
    """
    Compute the equilibrium (u_inf, v_inf) and its stationarity residuals.

    Writes u_inf.csv, v_inf.csv and summary.json. Requires kappa > 0.
    """
    run = make_run_context(ctx, **options)
    eq, summary = run.pipeline.run_equilibrium()
    logger.info(
        f"Equilibrium after {eq.iterations} iterations: r_u={eq.r_u:.3e}, r_v={eq.r_v:.3e}"
    )
    write_field(eq.u_inf, "u", run.out_dir / "u_inf.csv")
    write_field(eq.v_inf, "v", run.out_dir / "v_inf.csv")
    run.finish(summary)
