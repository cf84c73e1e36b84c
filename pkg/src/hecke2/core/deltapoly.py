"""Modular forms mod 2 of level 1 as polynomials in Delta."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from hecke2.core.errors import NotAPolynomial, PreconditionError
from hecke2.core.f2series import F2Series, delta_pow, iter_bits

GRADES = (1, 3, 5, 7)

# delta_pow windows used by from_series are rounded up to this size so that
# calls with nearby precisions share cache entries.
_WINDOW = 1024


@dataclass(frozen=True, eq=False)
class DeltaPoly:
    """A sum of distinct powers of Delta; the empty set is the zero form."""

    exponents: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if not isinstance(self.exponents, frozenset):
            object.__setattr__(self, "exponents", frozenset(self.exponents))
        if any(m < 0 for m in self.exponents):
            raise PreconditionError("exponents must be non-negative")

    @classmethod
    def of(cls, *exponents: int) -> DeltaPoly:
        """Build a form from exponents; repeated exponents cancel in pairs."""
        return cls.from_terms(exponents)

    @classmethod
    def from_terms(cls, terms: Iterable[int]) -> DeltaPoly:
        present: set[int] = set()
        for m in terms:
            present ^= {m}
        return cls(frozenset(present))

    @classmethod
    def from_mask(cls, mask: int) -> DeltaPoly:
        """Inverse of `mask`: bit m set means Delta^m is present."""
        return cls(frozenset(iter_bits(mask)))

    @property
    def mask(self) -> int:
        value = 0
        for m in self.exponents:
            value |= 1 << m
        return value

    @property
    def degree(self) -> int:
        """Largest exponent, -1 for the zero form."""
        return max(self.exponents, default=-1)

    def is_zero(self) -> bool:
        return not self.exponents

    def is_parabolic(self) -> bool:
        return 0 not in self.exponents

    def is_odd_form(self) -> bool:
        return all(m % 2 == 1 for m in self.exponents)

    def ordered(self) -> list[int]:
        """Exponents in canonical (strictly decreasing) order."""
        return sorted(self.exponents, reverse=True)

    def frobenius(self, times: int = 1) -> DeltaPoly:
        """Raise to the power 2^times, which doubles every exponent `times` times."""
        return DeltaPoly(frozenset(m << times for m in self.exponents))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __xor__(self, other: DeltaPoly) -> DeltaPoly:
        return DeltaPoly(self.exponents ^ other.exponents)

    __add__ = __xor__

    def __mul__(self, other: DeltaPoly) -> DeltaPoly:
        return DeltaPoly.from_terms(
            a + b for a in self.exponents for b in other.exponents
        )

    def __iter__(self) -> Iterator[int]:
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.exponents)

    def __bool__(self) -> bool:
        return bool(self.exponents)

    def __contains__(self, m: object) -> bool:
        return m in self.exponents


class OddForm(DeltaPoly):
    """A form in the span of Delta, Delta^3, Delta^5, ..."""

    def __post_init__(self) -> None:
        super().__post_init__()
        bad = sorted(m for m in self.exponents if m % 2 == 0)
        if bad:
            raise PreconditionError(f"odd form has even exponents {bad}")


ZERO = DeltaPoly()
DELTA = OddForm(frozenset({1}))


def as_odd_form(f: DeltaPoly) -> OddForm:
    """View f as an OddForm, checking that every exponent is odd.

    Raises:
        PreconditionError: If f has an even exponent
    """
    if isinstance(f, OddForm):
        return f
    return OddForm(f.exponents)


def require_parabolic(f: DeltaPoly) -> None:
    """Reject forms with a constant term.

    Raises:
        PreconditionError: If f has a constant term
    """
    if not f.is_parabolic():
        raise PreconditionError(
            "form has a constant term; only cusp forms are handled"
        )


def to_series(f: DeltaPoly, prec: int) -> F2Series:
    """q-expansion of f to precision prec."""
    bits = 0
    for m in f.exponents:
        bits ^= delta_pow(m, prec).bits
    return F2Series(bits, prec)


def _delta_pow_window(n: int, prec: int) -> int:
    window = -(-prec // _WINDOW) * _WINDOW
    return delta_pow(n, window).bits & ((1 << prec) - 1)


def from_series(s: F2Series, degree_bound: int) -> DeltaPoly:
    """Recover the polynomial in Delta whose q-expansion is s.

    Triangular elimination: Delta^n = q^n + (higher terms), so the lowest set
    bit of the residual names the next exponent to remove.

    Args:
        s: Series known below s.prec
        degree_bound: Largest exponent the answer may contain

    Returns:
        The unique form g of degree <= degree_bound with to_series(g) = s

    Raises:
        PreconditionError: If s.prec <= degree_bound
        NotAPolynomial: If a residual survives the elimination
    """
    if s.prec < degree_bound + 1:
        raise PreconditionError(
            f"precision {s.prec} cannot determine degree {degree_bound}"
        )
    residual = s.bits
    found: list[int] = []
    while residual:
        n = (residual & -residual).bit_length() - 1
        if n > degree_bound:
            break
        found.append(n)
        residual ^= _delta_pow_window(n, s.prec)
    if residual:
        lowest = (residual & -residual).bit_length() - 1
        raise NotAPolynomial(
            f"series is not a polynomial of degree <= {degree_bound} in Delta "
            f"(residual starts at q^{lowest}, precision {s.prec})"
        )
    return DeltaPoly(frozenset(found))


def grade_decompose(f: DeltaPoly) -> dict[int, OddForm]:
    """Split an odd form along the residues of its exponents mod 8.

    Returns:
        Mapping i -> part supported on exponents = i (mod 8), for i in 1, 3, 5, 7
    """
    odd = as_odd_form(f)
    return {
        i: OddForm(frozenset(m for m in odd.exponents if m % 8 == i)) for i in GRADES
    }


def two_power_decompose(f: DeltaPoly) -> list[tuple[int, OddForm]]:
    """Write f = sum over s of f_s^(2^s) with every f_s an odd form.

    Returns:
        (s, f_s) pairs with f_s nonzero, in increasing s

    Raises:
        PreconditionError: If f has a constant term
    """
    require_parabolic(f)
    parts: dict[int, set[int]] = {}
    for m in f.exponents:
        s = (m & -m).bit_length() - 1
        parts.setdefault(s, set()).add(m >> s)
    return [(s, OddForm(frozenset(parts[s]))) for s in sorted(parts)]


def dominant_exponent(f: DeltaPoly) -> int:
    """Exponent of f that is largest for the domination order.

    Raises:
        PreconditionError: If f is zero or not an odd form
    """
    from hecke2.core.nilpotence import domination_key

    odd = as_odd_form(f)
    if odd.is_zero():
        raise PreconditionError("the zero form has no dominant exponent")
    return max(odd.exponents, key=domination_key)
