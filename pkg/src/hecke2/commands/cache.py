"""F_p cache commands (list, clear)."""

from __future__ import annotations

import typer
from rich.console import Console
from rich.table import Table

from hecke2.commands.common import console, handle_errors
from hecke2.core.cache import FpCacheManager
from hecke2.core.config import load_settings


def cache_list() -> None:
    """List the primes whose F_p is cached."""
    with handle_errors("Failed to list the cache"):
        settings = load_settings()
        manager = FpCacheManager(settings.cache_dir)
        primes = manager.entries()

        if not primes:
            console.print(f"[yellow]No cached F_p in {settings.cache_dir}[/yellow]")
            console.print("Fill it with: [cyan]hecke2 fp -p <prime>[/cyan]")
            return

        table = Table(show_header=True, header_style="bold blue")
        table.add_column("p", style="cyan", justify="right")
        table.add_column("File", style="dim")
        for p in primes:
            table.add_row(str(p), str(manager.path_manager.get_fp_path(p)))
        Console().print(table)


def cache_clear(
    force: bool = typer.Option(False, "--force", "-f", help="Do not ask"),
) -> None:
    """Remove every cached F_p."""
    with handle_errors("Failed to clear the cache"):
        settings = load_settings()
        manager = FpCacheManager(settings.cache_dir)
        count = len(manager.entries())
        if not count:
            console.print("[yellow]Cache is already empty[/yellow]")
            return
        if not force and not typer.confirm(f"Remove {count} cached F_p file(s)?"):
            console.print("[yellow]Nothing removed[/yellow]")
            return
        removed = manager.clear()
        console.print(f"[green]✓[/green] Removed {removed} cached F_p file(s)")
