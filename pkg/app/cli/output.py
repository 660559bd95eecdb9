"""Shared plumbing for the commands: input resolution, error reporting, JSON output."""
import logging
from pathlib import Path
from typing import Optional

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console

from app.algebra.tgraph import TranspositionSet
from app.core.errors import EXIT_IO, CaygenError
from app.db.repository import load
from app.schemas.schemas import ErrorResponse, InputSpec

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)

TIMING_FIELDS = {"ms_fast", "ms_oracle"}


def fail(detail: str, exit_code: int, as_json: bool = False) -> None:
    """Report an error and leave with `exit_code`."""
    if as_json:
        typer.echo(ErrorResponse(detail=detail).model_dump_json())
    else:
        err_console.print(f"error: {detail}", style="red", markup=False, highlight=False, soft_wrap=True)
    raise typer.Exit(code=exit_code)


def fail_from(error: CaygenError, as_json: bool = False) -> None:
    logger.debug("command failed", exc_info=error)
    fail(str(error), error.exit_code, as_json)


def read_input(source: str, options: Optional[dict] = None) -> tuple[InputSpec, TranspositionSet]:
    try:
        spec = InputSpec(source=source, options=options or {})
    except ValidationError as e:
        message = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
        raise CaygenError(message) from e
    return spec, load(spec)


def emit_json(model: BaseModel, exclude=None) -> None:
    typer.echo(model.model_dump_json(indent=2, exclude=exclude))


def write_output(output: Path, text: str) -> None:
    try:
        output.write_text(text, encoding="utf-8")
    except OSError as e:
        fail(f"{output}: cannot write: {e.strerror or e}", EXIT_IO)


def yes_no(value: Optional[bool]) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"

