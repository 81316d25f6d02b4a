"""Main entry point for the pattpeak command line."""

import logging
import sys
from typing import Optional

from apps.pattpeak import __version__

LOGGER = logging.getLogger(__name__)


def setup_logging(log_level: str = "INFO") -> None:
    """Configure logging with plain text format and timestamps.

    Records go to stderr; stdout only carries command output.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    numeric_level = getattr(logging, log_level.upper(), None)
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    logging.basicConfig(
        level=numeric_level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )

    # If DEBUG: set libraries to INFO
    # If INFO or higher: set libraries to WARNING
    if numeric_level == logging.DEBUG:
        library_level = logging.INFO
    else:
        library_level = max(numeric_level, logging.WARNING)

    logging.getLogger("sympy").setLevel(library_level)
    logging.getLogger("asyncio").setLevel(library_level)

    LOGGER.debug(f"Logging configured at {log_level} level")
    if library_level != numeric_level:
        LOGGER.debug(
            f"Third-party libraries (sympy, asyncio) set to "
            f"{logging.getLevelName(library_level)} level"
        )


def main(argv: Optional[list] = None) -> int:
    """Parse arguments, run the command and return its exit code."""
    from apps.pattpeak.cli.commands import execute

    return execute(argv, setup_logging=setup_logging)


def run() -> None:
    """Run the application."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        LOGGER.info(f"pattpeak {__version__} interrupted by user (Ctrl+C)")
        sys.exit(130)


if __name__ == "__main__":
    run()
