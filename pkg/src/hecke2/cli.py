"""CLI entrypoint for hecke2 using Typer."""

from __future__ import annotations

import typer
from rich.console import Console

from hecke2 import __version__
from hecke2.commands import cache, compute, tables, verify
from hecke2.core.utils import setup_logging

console = Console()


def version_callback(value: bool) -> None:
    """Handle version option."""
    if value:
        console.print(f"hecke2 version {__version__}")
        raise typer.Exit()


app = typer.Typer(
    name="hecke2",
    help="Hecke operators on modular forms mod 2 and their nilpotence order",
    rich_markup_mode="rich",
)


@app.callback()
def main_callback(
    _version: bool = typer.Option(
        False,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Log solver and cache details to stderr"
    ),
) -> None:
    """Hecke operators on modular forms mod 2 and their nilpotence order."""
    setup_logging(verbose)


# Computation commands
app.command("apply")(compute.apply)
app.command("fp")(compute.fp)
app.command("order")(compute.order)
app.command("code")(compute.code)

# Tables and verification
app.command("table")(tables.table)
app.command("verify")(verify.verify)

# Cache commands
cache_app = typer.Typer(
    name="cache",
    help="Manage the on-disk F_p cache",
    rich_markup_mode="rich",
)
cache_app.command("list")(cache.cache_list)
cache_app.command("clear")(cache.cache_clear)
app.add_typer(cache_app, name="cache")


def main() -> None:
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
