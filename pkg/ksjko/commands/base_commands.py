"""
Base CLI plumbing - version command, shared run options and error mapping.
"""

import functools
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, TypeVar

import click
from rich.console import Console

from ksjko import __version__
from ksjko.config.loader import load_config
from ksjko.config.models import RunSpec
from ksjko.core.errors import ConfigError, KsJkoError
from ksjko.core.run_pipeline import RunPipeline
from ksjko.formatters.rich_renderer import RichRenderer
from ksjko.formatters.writer import write_summary
from ksjko.utils.logger import logger, setup_logger

EXIT_OK = 0
EXIT_SOLVER_ERROR = 1
EXIT_CONFIG_ERROR = 2

F = TypeVar("F", bound=Callable[..., Any])


def version() -> None:
    """Show version information."""
    console = Console()
    console.print("[bold cyan]ksjko[/bold cyan]")
    console.print(f"Version: {__version__}")
    console.print("Minimizing-movement solver for the 1D Keller-Segel system")


def exit_on_error(func: F) -> F:
    """Map ksjko errors to exit codes: 2 for configuration, 1 for everything else."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ConfigError as e:
            logger.error(f"Configuration error: {e}")
            sys.exit(EXIT_CONFIG_ERROR)
        except KsJkoError as e:
            logger.error(f"{type(e).__name__}: {e}")
            sys.exit(EXIT_SOLVER_ERROR)

    return wrapper  # type: ignore[return-value]


def run_options(func: F) -> F:
    """Options shared by every run subcommand."""
    options = [
        click.option(
            "--config",
            "-c",
            "config_path",
            required=True,
            type=click.Path(exists=True, dir_okay=False),
            help="Path to the run config (JSON-compatible)",
        ),
        click.option(
            "--out",
            "-o",
            type=click.Path(file_okay=False),
            default=None,
            help="Output directory (default: output.dir of the config)",
        ),
        click.option(
            "--stride", type=click.IntRange(min=1), default=None, help="Snapshot stride in steps"
        ),
        click.option("--seed", type=int, default=None, help="Override the random seed"),
        click.option("--quiet", "-q", is_flag=True, help="Only report warnings and errors"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


class RunContext:
    """Everything a run subcommand needs after option parsing."""

    def __init__(
        self,
        config_path: str,
        out: Optional[str],
        stride: Optional[int],
        seed: Optional[int],
        quiet: bool,
        debug: bool = False,
    ):
        if quiet or debug:
            setup_logger(debug=debug, quiet=quiet)
        self.quiet = quiet
        spec = load_config(config_path)
        updates: Dict[str, Any] = {}
        if seed is not None:
            updates["seed"] = seed
        if stride is not None:
            updates["output"] = spec.output.model_copy(update={"stride": stride})
        self.spec: RunSpec = spec.model_copy(update=updates) if updates else spec
        self.out_dir = Path(out) if out else Path(self.spec.output.dir)
        self.pipeline = RunPipeline(self.spec, base_dir=Path(config_path).resolve().parent)
        logger.debug(f"Loaded {config_path}; output to {self.out_dir}")

    def finish(self, summary: Dict[str, Any]) -> None:
        """Write summary.json, render the console table and print the output directory."""
        write_summary(summary, self.out_dir)
        if not self.quiet:
            RichRenderer().render(summary)
        click.echo(str(self.out_dir))


def make_run_context(ctx: click.Context, **options: Any) -> RunContext:
    debug = bool(getattr(ctx.obj, "debug", False))
    return RunContext(debug=debug, **options)
