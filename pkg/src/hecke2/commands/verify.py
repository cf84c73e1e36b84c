"""Verification command."""

from __future__ import annotations

from enum import Enum

import typer

from hecke2.commands.common import (
    EXIT_VERIFY_FAILED,
    console,
    fail,
    handle_errors,
)
from hecke2.core.config import load_settings
from hecke2.core.suites import SUITES, SuiteParams, run_suite

SuiteName = Enum(  # type: ignore[misc]
    "SuiteName", {name: name for name in SUITES}, type=str
)


def verify(
    suite: SuiteName = typer.Argument(..., help="Suite to run"),
    max_k: int | None = typer.Option(None, "--max-k", min=1, help="Largest k"),
    max_p: int | None = typer.Option(None, "--max-p", min=3, help="Largest prime"),
    max_degree: int | None = typer.Option(
        None, "--max-degree", min=1, help="Largest exponent of enumerated forms"
    ),
    big_k: int | None = typer.Option(
        None, "--K", min=1, help="Number of generating-series terms"
    ),
    samples: int | None = typer.Option(
        None, "--samples", min=1, help="Random forms per prime"
    ),
    seed: int = typer.Option(0, "--seed", help="Seed for random forms"),
    jobs: int | None = typer.Option(
        None, "--jobs", "-j", min=1, help="Worker processes (default: config or CPUs)"
    ),
) -> None:
    """Run a verification suite and report the first counterexample."""
    name = suite.value
    with handle_errors(f"Suite {name} could not run"):
        settings = load_settings()
        params = SuiteParams(
            max_k=max_k,
            max_p=max_p,
            max_degree=max_degree,
            K=big_k,
            samples=samples,
            seed=seed,
            witness_prime_count=settings.witness_prime_count,
        )
        with console.status(f"[bold blue]Running {name}..."):
            result = run_suite(name, params, jobs=jobs or settings.jobs)

    if not result.passed:
        typer.echo(f"FAIL {name} checked={result.checked}")
        raise fail(f"{name}: {result.counterexample}", EXIT_VERIFY_FAILED)
    typer.echo(f"PASS {name} checked={result.checked}")
    console.print(f"[green]✓[/green] {SUITES[name].description}")
