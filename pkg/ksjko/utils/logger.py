"""Rich console logger for solver diagnostics.

Provides styled output on standard error using the Rich library, so that
standard output stays free for machine-readable results.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.theme import Theme


# Custom theme for ksjko
KSJKO_THEME = Theme(
    {
        "info": "cyan",
        "warning": "yellow",
        "error": "bold red",
        "success": "bold green",
        "debug": "dim",
    }
)

DEBUG_LOG_FILE = "ksjko_debug.log"


def setup_logger(
    name: str = "ksjko",
    level: int = logging.INFO,
    debug: bool = False,
    quiet: bool = False,
) -> tuple[logging.Logger, Console]:
    """Set up the Rich logger.

    Args:
        name: Logger name
        level: Logging level (default INFO)
        debug: Enable debug mode with file logging
        quiet: Only report warnings and errors

    Returns:
        Tuple of (logger, console) for direct use
    """
    console = Console(theme=KSJKO_THEME, stderr=True)

    logger = logging.getLogger(name)
    if debug:
        logger.setLevel(logging.DEBUG)
    elif quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(level)
    logger.handlers.clear()  # Remove existing handlers
    logger.propagate = False

    console_handler = RichHandler(
        console=console,
        rich_tracebacks=True,
        tracebacks_show_locals=debug,
        markup=False,
        show_path=debug,
    )
    console_handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(console_handler)

    # File handler for debug mode
    if debug:
        file_handler = logging.FileHandler(DEBUG_LOG_FILE)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        logger.addHandler(file_handler)

    return logger, console


# Global logger instance
logger, console = setup_logger()
