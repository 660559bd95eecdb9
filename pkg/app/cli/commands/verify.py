import logging
from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from app.algebra.tgraph import TranspositionSet
from app.cli.output import TIMING_FIELDS, console, err_console, fail, fail_from, read_input, write_output, yes_no
from app.core.errors import EXIT_DISAGREEMENT, EXIT_OK, EXIT_USAGE, CapacityError, CaygenError, PreconditionError
from app.schemas.schemas import ClaimId, SweepReport, VerificationRun
from app.verification.checks import run_claim, sweep, sweep_instances

logger = logging.getLogger(__name__)

ALL_CLAIMS = "all"


def _claims(claim: str, as_json: bool = False) -> list[ClaimId]:
    if claim == ALL_CLAIMS:
        return list(ClaimId)
    try:
        return [ClaimId(claim)]
    except ValueError:
        choices = ", ".join([c.value for c in ClaimId] + [ALL_CLAIMS])
        fail(f"unknown claim {claim!r}; expected one of {choices}", EXIT_USAGE, as_json)


def _instances(
    claim: ClaimId,
    n: int,
    s: Optional[TranspositionSet],
    s2: Optional[TranspositionSet],
    extended: bool,
) -> list[tuple[TranspositionSet, Optional[TranspositionSet]]]:
    if s is None:
        return sweep_instances(claim, n, extended=extended)
    if claim is ClaimId.part_a:
        return [(s, s2)] if s2 is not None else []
    return [(s, None)]


def run(
    claims: list[ClaimId],
    n: int,
    s: Optional[TranspositionSet] = None,
    s2: Optional[TranspositionSet] = None,
    workers: int = 1,
    extended: bool = False,
    allow_large_connectivity: bool = False,
) -> VerificationRun:
    """Run each claim; with several claims, those outside their capacity bound are skipped."""
    result = VerificationRun(n=n, sweeps=[])
    for claim in claims:
        instances = _instances(claim, n, s, s2, extended)
        if not instances:
            if len(claims) == 1:
                raise PreconditionError("part_a compares two inputs; pass --against")
            result.skipped[claim.value] = "needs a second transposition set (--against)"
            continue
        connectivity_extended = claim is ClaimId.connectivity and allow_large_connectivity
        try:
            if len(instances) == 1:
                a, b = instances[0]
                report = run_claim(claim, a, b, extended=connectivity_extended)
                report_set = SweepReport(
                    claim=claim, n=n, total=1, agreed=int(report.agree),
                    failed=int(report.failed), reports=[report],
                )
            else:
                report_set = sweep(
                    claim, n, instances=instances, workers=workers,
                    extended=connectivity_extended,
                )
        except CapacityError as e:
            if len(claims) == 1:
                raise
            logger.warning("skipping %s: %s", claim.value, e.detail)
            result.skipped[claim.value] = e.detail
            continue
        result.sweeps.append(report_set)
    return result


def _render(result: VerificationRun, timings: bool) -> None:
    for report_set in result.sweeps:
        table = Table(title=f"{report_set.claim.value} at n={report_set.n}", title_justify="left")
        table.add_column("S")
        if report_set.claim is ClaimId.part_a:
            table.add_column("S'")
        table.add_column("fast")
        table.add_column("oracle")
        table.add_column("agree")
        table.add_column("asserted")
        if timings:
            table.add_column("ms fast", justify="right")
            table.add_column("ms oracle", justify="right")
        for r in report_set.reports:
            row = [" ".join(f"{i}-{j}" for i, j in r.s)]
            if report_set.claim is ClaimId.part_a:
                row.append(" ".join(f"{i}-{j}" for i, j in r.s2 or []))
            row += [_cell(r.fast), _cell(r.oracle), yes_no(r.agree), yes_no(r.asserted)]
            if timings:
                row += [f"{r.ms_fast:.1f}", f"{r.ms_oracle:.1f}"]
            table.add_row(*row, style="red" if r.failed else None)
        console.print(table, highlight=False)
        console.print(
            f"{report_set.agreed}/{report_set.total} agree, {report_set.failed} failed",
            highlight=False,
        )
    for claim, reason in result.skipped.items():
        console.print(f"skipped {claim}: {reason}", highlight=False)


def _cell(value) -> str:
    if isinstance(value, bool):
        return yes_no(value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={_cell(v)}" for k, v in value.items())
    return str(value)


def verify(
    claim: str = typer.Option(..., "--claim", "-c", help="Claim id, or 'all'"),
    n: Optional[int] = typer.Option(None, "--degree", "-n", help="Degree; sweeps every connected class"),
    source: Optional[str] = typer.Option(None, "--input", "-i", help="Check a single edge-list file or family URI"),
    against: Optional[str] = typer.Option(None, "--against", help="Second input, for part_a"),
    workers: int = typer.Option(1, "--workers", "-w", min=1, help="Processes for sweeps"),
    extended: bool = typer.Option(False, "--extended", help="Allow enumeration for n = 6, 7"),
    allow_large_connectivity: bool = typer.Option(
        False, "--allow-large-connectivity", help="Run the connectivity check at n = 5"
    ),
    timings: bool = typer.Option(False, "--timings", help="Include timing fields"),
    as_json: bool = typer.Option(False, "--json", help="Print a single JSON document"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Also write the JSON document here"),
):
    """Check a claim against its oracle; exit 1 if any asserted instance disagrees."""
    claims = _claims(claim, as_json)
    try:
        s = s2 = None
        if source is not None:
            _, s = read_input(source)
            if against is not None:
                _, s2 = read_input(against)
        elif n is None:
            fail("give --degree/-n for a sweep or --input for a single instance", EXIT_USAGE, as_json)
        if s is not None and n is not None and n != s.n:
            fail(f"--degree/-n {n} does not match the input degree {s.n}", EXIT_USAGE, as_json)
        result = run(
            claims,
            s.n if s is not None else n,
            s=s,
            s2=s2,
            workers=workers,
            extended=extended,
            allow_large_connectivity=allow_large_connectivity,
        )
    except CaygenError as e:
        fail_from(e, as_json)

    exclude = None if timings else {"sweeps": {"__all__": {"reports": {"__all__": TIMING_FIELDS}}}}
    document = result.model_dump_json(indent=2, exclude=exclude)
    if output is not None:
        write_output(output, document + "\n")
    if as_json:
        typer.echo(document)
    else:
        _render(result, timings)

    if result.failed:
        for report_set in result.sweeps:
            for r in report_set.reports:
                if r.failed:
                    err_console.print(r.model_dump_json(exclude=TIMING_FIELDS), markup=False, highlight=False, soft_wrap=True)
        raise typer.Exit(code=EXIT_DISAGREEMENT)
    raise typer.Exit(code=EXIT_OK)
