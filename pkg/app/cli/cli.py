import typer

from app.cli.commands import analyze
from app.cli.commands import enumeration
from app.cli.commands import verify
from app.core.config import settings

cli_router = typer.Typer(
    name=settings.PROJECT_NAME,
    help="Cayley graphs of the symmetric group generated by transpositions.",
    no_args_is_help=True,
)

cli_router.command("analyze")(analyze.analyze)
cli_router.command("verify")(verify.verify)
cli_router.command("enumerate")(enumeration.enumerate_classes)
