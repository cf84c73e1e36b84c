"""Computation commands (apply, fp, order, code)."""

from __future__ import annotations

import json
from enum import Enum

import typer

from hecke2.commands.common import (
    EXIT_VERIFY_FAILED,
    FormOrder,
    OutputFormat,
    console,
    fail,
    handle_errors,
)
from hecke2.core.cache import FpCacheManager
from hecke2.core.config import load_settings
from hecke2.core.deltapoly import ZERO, DeltaPoly, two_power_decompose
from hecke2.core.formtext import parse_form, render_form
from hecke2.core.hecke import hecke_direct
from hecke2.core.nilpotence import (
    code_of,
    domination_sorted,
    nilpotence_order,
    witness_check,
)
from hecke2.core.recurrence import hecke_recurrence
from hecke2.core.utils import validate_odd_prime


class Route(str, Enum):
    direct = "direct"
    recurrence = "recurrence"


def _ordered(f: DeltaPoly, order: FormOrder) -> list[int]:
    if order is FormOrder.domination:
        return domination_sorted(f)
    return f.ordered()


def apply(
    form: str = typer.Argument(..., help="Form such as 'D^7 + D^3'"),
    p: int = typer.Option(..., "--prime", "-p", help="Odd prime p of T_p"),
    via: Route = typer.Option(
        Route.direct, "--via", help="Compute by q-expansions or by the F_p recurrence"
    ),
    output_format: OutputFormat = typer.Option(
        OutputFormat.text, "--format", help="Output format"
    ),
    order: FormOrder = typer.Option(
        FormOrder.degree,
        "--order",
        help="Term order of the result (domination needs an odd result)",
    ),
) -> None:
    """Apply the Hecke operator T_p to a form."""
    with handle_errors(f"Failed to apply T_{p}"):
        f = parse_form(form)
        validate_odd_prime(p)
        if via is Route.recurrence:
            settings = load_settings()
            fp_poly = FpCacheManager(settings.cache_dir).get_or_compute(
                p, use_cache=settings.use_cache
            )
            result = ZERO
            for k in f:
                result = result ^ hecke_recurrence(fp_poly, k)
        else:
            result = hecke_direct(p, f)
        exponents = _ordered(result, order)
        text = render_form(result, exponents)

        if output_format is OutputFormat.json:
            typer.echo(
                json.dumps(
                    {
                        "p": p,
                        "form": render_form(f),
                        "result": text,
                        "exponents": exponents,
                    },
                    separators=(",", ":"),
                )
            )
        else:
            typer.echo(text)


def fp(
    p: int = typer.Option(..., "--prime", "-p", help="Odd prime p"),
    output_format: OutputFormat = typer.Option(
        OutputFormat.text, "--format", help="Output format"
    ),
    no_cache: bool = typer.Option(
        False, "--no-cache", help="Recompute F_p and leave the cache untouched"
    ),
) -> None:
    """Compute the recurrence polynomial F_p(X, Y)."""
    with handle_errors(f"Failed to compute F_{p}"):
        validate_odd_prime(p)
        settings = load_settings()
        manager = FpCacheManager(settings.cache_dir)
        with console.status(f"[bold blue]Solving for F_{p}..."):
            result = manager.get_or_compute(
                p, use_cache=settings.use_cache and not no_cache
            )

        if output_format is OutputFormat.json:
            typer.echo(result.to_json())
        else:
            typer.echo(result.render_text())


def order(
    form: str = typer.Argument(..., help="Form such as 'D^3 + D'"),
    verify: bool = typer.Option(
        False, "--verify", help="Check that the witness primes send the form to D"
    ),
) -> None:
    """Report the nilpotence order g(f) with its witness."""
    with handle_errors("Failed to compute the nilpotence order"):
        f = parse_form(form)
        report = nilpotence_order(f)
        typer.echo(report.to_json())

        if verify and not f.is_zero():
            part = f
            if report.derived:
                part = dict(two_power_decompose(f))[report.frobenius_power]
            if not witness_check(part):
                raise fail(
                    f"witness {report.witness} does not send {render_form(part)} to D",
                    EXIT_VERIFY_FAILED,
                )
            console.print("[green]✓[/green] Witness verified")


def code(
    k: int = typer.Argument(..., min=0, help="Non-negative integer"),
) -> None:
    """Print the code [n3, n5] and height of an integer."""
    with handle_errors(f"Failed to compute the code of {k}"):
        result = code_of(k)
        typer.echo(
            json.dumps(
                {"k": k, "code": result.as_list(), "h": result.h},
                separators=(",", ":"),
            )
        )
