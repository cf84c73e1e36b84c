"""Text form of polynomials in Delta: "D^7 + D^3 + D"."""

from __future__ import annotations

import re

from hecke2.core.deltapoly import DeltaPoly
from hecke2.core.errors import FormParseError

_TERM = re.compile(r"D(?:\^([0-9]+))?")
_WHITESPACE = re.compile(r"\s+")


def parse_form(text: str) -> DeltaPoly:
    """Parse FormText into a cusp form.

    Grammar: term ("+" term)*, term = "D^" uint | "D". Whitespace is ignored,
    a repeated exponent cancels its twin, and "0" is the zero form.

    Raises:
        FormParseError: On malformed input or a D^0 term
    """
    compact = _WHITESPACE.sub("", text)
    if compact == "0":
        return DeltaPoly()
    if not compact:
        raise FormParseError("empty form")
    exponents: list[int] = []
    for position, term in enumerate(compact.split("+")):
        match = _TERM.fullmatch(term)
        if match is None:
            raise FormParseError(f"term {position + 1} ({term!r}) is not D or D^n")
        exponent = int(match.group(1)) if match.group(1) is not None else 1
        if exponent == 0:
            raise FormParseError("D^0 is not a cusp form")
        exponents.append(exponent)
    return DeltaPoly.from_terms(exponents)


def render_form(f: DeltaPoly, order: list[int] | None = None) -> str:
    """Render a form, by decreasing degree unless an explicit order is given."""
    exponents = f.ordered() if order is None else order
    if not exponents:
        return "0"
    return " + ".join("D" if m == 1 else f"D^{m}" for m in exponents)
