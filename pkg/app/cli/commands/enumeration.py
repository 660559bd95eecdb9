from pathlib import Path
from typing import Optional

import typer

from app.algebra.tgraph import enumerate_connected
from app.cli.output import emit_json, fail, fail_from
from app.core.errors import EXIT_IO, CaygenError
from app.db.repository import export_to_file, format_inline
from app.schemas.schemas import EnumerationEntry, EnumerationReport


def enumerate_classes(
    n: int = typer.Argument(..., help="Number of points, 2 <= n <= 7"),
    extended: bool = typer.Option(False, "--extended", help="Allow n = 6 and n = 7"),
    as_json: bool = typer.Option(False, "--json", help="Print a single JSON document"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Also write the classes as edge-list blocks"),
):
    """List one connected transposition graph per isomorphism class, one per line."""
    try:
        classes = enumerate_connected(n, extended=extended)
    except CaygenError as e:
        fail_from(e, as_json)
    if output is not None:
        try:
            export_to_file(output, classes)
        except OSError as e:
            fail(f"{output}: cannot write: {e.strerror or e}", EXIT_IO, as_json)
    if as_json:
        items = [EnumerationEntry(n=s.n, m=len(s), edges=s.sorted_pairs()) for s in classes]
        emit_json(EnumerationReport(n=n, classes=len(items), items=items))
        return
    for s in classes:
        typer.echo(format_inline(s))
