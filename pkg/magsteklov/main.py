"""
Magnetic Steklov Spectra
========================
Console entry point and logging setup.
"""

import logging
import sys

import structlog

from magsteklov.config import settings


def configure_logging() -> None:
    """Structured logs go to stderr so stdout stays free for tables."""
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, settings.log_level),
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            (
                structlog.processors.JSONRenderer()
                if settings.log_format == "json"
                else structlog.dev.ConsoleRenderer()
            ),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def run() -> None:
    """Run the command line."""
    from magsteklov.cli import main

    configure_logging()
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    run()
