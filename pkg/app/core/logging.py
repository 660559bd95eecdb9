import logging

from rich.console import Console
from rich.logging import RichHandler

from app.core.config import settings


def setup_logging(level: str | None = None) -> None:
    """Send log records to stderr through rich; stdout is reserved for reports."""
    level = (level or settings.LOG_LEVEL).upper()
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=settings.DEBUG,
        rich_tracebacks=settings.DEBUG,
    )
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )
