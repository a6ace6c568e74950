"""
Decay-rate command - exponential convergence certificate of a JKO run.
"""

import click

from ksjko.commands.base_commands import exit_on_error, make_run_context, run_options
from ksjko.formatters.writer import write_outputs
from ksjko.utils.logger import logger


@click.command("decay-rate")
@run_options
@click.pass_context
@exit_on_error
def decay_rate(ctx: click.Context, **options) -> None:
    """
    Fit the decay rate of the Lyapunov functional and check the envelope.

    Fails with status 1 when the run is too short or too flat for a fit.
    """
    run = make_run_context(ctx, **options)
    result = run.pipeline.run_evolve(require_certificate=True)
    cert = result.certificate
    if cert is not None:
        logger.info(
            f"Fitted half rate {cert.half_rate:.4f} vs reference {cert.reference_rate:.4f}"
        )
    write_outputs(
        result, run.out_dir, stride=run.spec.output.stride, plots=run.spec.output.plots
    )
    run.finish(result.summary)
