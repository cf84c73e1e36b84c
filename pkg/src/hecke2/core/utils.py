"""Utility functions for hecke2."""

from __future__ import annotations

import logging
from functools import lru_cache

from rich.console import Console
from rich.logging import RichHandler
from sympy import isprime, primerange

from hecke2.core.errors import PreconditionError

NEG_INF = float("-inf")


def setup_logging(verbose: bool = False) -> None:
    """Route hecke2 log records to stderr through rich.

    Args:
        verbose: Emit DEBUG records when True, warnings only otherwise
    """
    logger = logging.getLogger("hecke2")
    logger.handlers.clear()
    logger.addHandler(
        RichHandler(console=Console(stderr=True), show_path=False, show_time=False)
    )
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False


@lru_cache(maxsize=1024)
def is_odd_prime(p: int) -> bool:
    """Check whether p is a prime greater than 2.

    Args:
        p: Integer to test

    Returns:
        True if p is an odd prime, False otherwise
    """
    return p > 2 and bool(isprime(p))


def validate_odd_prime(p: int) -> None:
    """Validate that p is an odd prime.

    Args:
        p: Integer to validate

    Raises:
        PreconditionError: If p is 2, composite or smaller than 3
    """
    if not is_odd_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")


def odd_primes_up_to(bound: int) -> list[int]:
    """List the odd primes p <= bound in increasing order."""
    return [int(p) for p in primerange(3, bound + 1)]


def first_odd_primes(count: int) -> list[int]:
    """List the first `count` odd primes.

    Args:
        count: Number of primes wanted

    Returns:
        The primes 3, 5, 7, ... (count of them)
    """
    primes: list[int] = []
    bound = 64
    while len(primes) < count:
        primes = odd_primes_up_to(bound)
        bound *= 2
    return primes[:count]


def format_height(value: int | float) -> str | int:
    """Render a height or nilpotence order for JSON output.

    The zero form has height minus infinity, which JSON cannot carry as a
    number, so it becomes the string "-inf".
    """
    if value == NEG_INF:
        return "-inf"
    return int(value)
