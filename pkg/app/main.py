import os
import sys
from typing import Optional

import typer

sys.path.insert(
    0,
    os.path.abspath(
        os.path.join(os.path.dirname(__file__), "..")
    )
)

from app.core.config import settings
from app.core.logging import setup_logging
from app.cli.cli import cli_router

app = cli_router


def version_callback(value: bool):
    if value:
        typer.echo(f"{settings.PROJECT_NAME} {settings.PROJECT_VERSION}")
        raise typer.Exit()


@app.callback()
def root(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level on stderr"),
    version: Optional[bool] = typer.Option(
        None, "--version", callback=version_callback, is_eager=True, help="Print the version and exit"
    ),
):
    setup_logging("DEBUG" if verbose or settings.DEBUG else None)


if __name__ == "__main__":
    app()
