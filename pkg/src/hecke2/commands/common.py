"""Helpers shared by the command modules."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum

import typer
from rich.console import Console

from hecke2.core.errors import Hecke2Error

# stdout carries only machine output; everything else goes here.
console = Console(stderr=True)

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class FormOrder(str, Enum):
    degree = "degree"
    domination = "domination"


def fail(message: str, code: int) -> typer.Exit:
    """Print an error line and build the Exit to raise."""
    console.print(f"[red]✗[/red] {message}")
    return typer.Exit(code)


@contextmanager
def handle_errors(action: str) -> Iterator[None]:
    """Map hecke2 exceptions to exit codes for one command.

    Parse, contract and bound errors (all ValueError) exit with 2, internal
    consistency failures with 3, and config or cache I/O problems with 2.
    """
    try:
        yield
    except typer.Exit:
        raise
    except ValueError as e:
        raise fail(f"{action}: {e}", EXIT_USAGE) from None
    except Hecke2Error as e:
        raise fail(f"{action}: internal check failed: {e}", EXIT_INTERNAL) from None
    except RuntimeError as e:
        raise fail(f"{action}: {e}", EXIT_USAGE) from None
