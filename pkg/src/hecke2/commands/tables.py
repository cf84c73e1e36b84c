"""Table generation command."""

from __future__ import annotations

import json
from enum import Enum
from typing import Any

import typer
from rich.console import Console
from rich.table import Table

from hecke2.commands.common import handle_errors
from hecke2.core.cache import FpCacheManager
from hecke2.core.config import load_settings
from hecke2.core.deltapoly import DeltaPoly
from hecke2.core.nilpotence import code_of, nilpotence_order
from hecke2.core.utils import format_height, odd_primes_up_to

ORDER_COLUMNS = ("k", "n3", "n5", "h", "g")


class TableKind(str, Enum):
    order = "order"
    code = "code"
    fp = "fp"


class TableFormat(str, Enum):
    tsv = "tsv"
    json = "json"
    rich = "rich"


def order_rows(max_k: int) -> list[dict[str, Any]]:
    """One row per odd k <= max_k with the code, height and g(Delta^k)."""
    rows = []
    for k in range(1, max_k + 1, 2):
        code = code_of(k)
        g = nilpotence_order(DeltaPoly.of(k)).g
        rows.append(
            {"k": k, "n3": code.n3, "n5": code.n5, "h": code.h, "g": format_height(g)}
        )
    return rows


def table(
    kind: TableKind = typer.Argument(..., help="Table to build"),
    max_k: int = typer.Option(99, "--max-k", min=1, help="Largest k (order, code)"),
    max_p: int = typer.Option(31, "--max-p", min=3, help="Largest p (fp)"),
    output_format: TableFormat = typer.Option(
        TableFormat.tsv, "--format", help="Output format"
    ),
) -> None:
    """Print a table of codes and orders, or of F_p polynomials."""
    with handle_errors(f"Failed to build the {kind.value} table"):
        if kind is TableKind.fp:
            settings = load_settings()
            manager = FpCacheManager(settings.cache_dir)
            polys = [
                manager.get_or_compute(p, use_cache=settings.use_cache)
                for p in odd_primes_up_to(max_p)
            ]
            if output_format is TableFormat.json:
                typer.echo(
                    json.dumps([fp.to_dict() for fp in polys], separators=(",", ":"))
                )
            elif output_format is TableFormat.rich:
                rich_table = Table(show_header=True, header_style="bold blue")
                rich_table.add_column("p", style="cyan", justify="right")
                rich_table.add_column("F_p(X,Y)", style="green")
                for fp in polys:
                    rich_table.add_row(str(fp.p), fp.render_text().split(" = ", 1)[1])
                Console().print(rich_table)
            else:
                for fp in polys:
                    typer.echo(fp.render_text())
            return

        rows = order_rows(max_k)
        if output_format is TableFormat.json:
            typer.echo(json.dumps(rows, separators=(",", ":")))
        elif output_format is TableFormat.rich:
            rich_table = Table(show_header=True, header_style="bold blue")
            for column in ORDER_COLUMNS:
                rich_table.add_column(column, justify="right")
            for row in rows:
                rich_table.add_row(*(str(row[c]) for c in ORDER_COLUMNS))
            Console().print(rich_table)
        else:
            typer.echo("\t".join(ORDER_COLUMNS))
            for row in rows:
                typer.echo("\t".join(str(row[c]) for c in ORDER_COLUMNS))
