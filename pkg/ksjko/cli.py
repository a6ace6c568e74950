"""Click CLI entry point for the Keller-Segel JKO toolkit.

Provides the main command group with global options and the run
subcommands: evolve, equilibrium, compare, decay-rate, sweep and
check-invariants.
"""

import sys
from typing import Optional, Sequence

import click

from ksjko.commands.base_commands import EXIT_SOLVER_ERROR, version
from ksjko.commands.check_invariants_command import check_invariants
from ksjko.commands.compare_command import compare
from ksjko.commands.decay_rate_command import decay_rate
from ksjko.commands.equilibrium_command import equilibrium
from ksjko.commands.evolve_command import evolve
from ksjko.commands.sweep_command import sweep
from ksjko.utils.logger import logger, setup_logger


class CLIContext:
    """Shared context object for CLI commands."""

    def __init__(self) -> None:
        self.debug = False


@click.group()
@click.option(
    "--debug",
    is_flag=True,
    help="Enable debug mode with verbose logging",
)
@click.pass_context
def cli(ctx: click.Context, debug: bool) -> None:
    """Minimizing-movement solver for the 1D Keller-Segel system.

    Every run subcommand reads a JSON-compatible config given by --config
    and writes its results to --out. Diagnostics go to standard error.

    Exit codes: 0 success, 1 solver or check failure, 2 configuration error.
    """
    cli_ctx = CLIContext()
    cli_ctx.debug = debug
    ctx.obj = cli_ctx

    if debug:
        setup_logger(debug=True)
        logger.debug("Debug mode enabled")


cli.command("version")(version)
cli.add_command(evolve)
cli.add_command(equilibrium)
cli.add_command(compare)
cli.add_command(decay_rate)
cli.add_command(sweep)
cli.add_command(check_invariants)


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI on an argument vector and return its exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 on solver error, 2 on configuration or usage error
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, prog_name="ksjko", standalone_mode=True)
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else EXIT_SOLVER_ERROR
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        if "--debug" in args:
            raise
        return EXIT_SOLVER_ERROR
    return 0


def main() -> None:
    """Console script entry point."""
    sys.exit(run_command())


if __name__ == "__main__":
    main()
