"""Codes, heights and the nilpotence order of forms under the odd Hecke operators.

For k = sum beta_i 2^i, the code of k is [n3, n5] where n3 collects the
digits beta_1, beta_3, beta_5, ... and n5 the digits beta_2, beta_4, ...,
each read as a binary number. The height is h = n3 + n5. For a nonzero odd
form f the nilpotence order is g(f) = h(m_1) + 1, m_1 being the exponent of
f that dominates all others, and T_3^n3 T_5^n5 sends f to Delta.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from hecke2.core.deltapoly import (
    DELTA,
    DeltaPoly,
    OddForm,
    as_odd_form,
    dominant_exponent,
    grade_decompose,
    require_parabolic,
    two_power_decompose,
)
from hecke2.core.errors import PreconditionError
from hecke2.core.hecke import apply_sequence, hecke_direct
from hecke2.core.utils import NEG_INF, format_height, validate_odd_prime

Height = int | float

_EVEN_BITS = 0x5555555555555555
_CHUNK = 64


def _compact(x: int) -> int:
    """Gather bits 0, 2, 4, ... of a 64-bit value into bits 0, 1, 2, ..."""
    x &= _EVEN_BITS
    x = (x | (x >> 1)) & 0x3333333333333333
    x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0F
    x = (x | (x >> 4)) & 0x00FF00FF00FF00FF
    x = (x | (x >> 8)) & 0x0000FFFF0000FFFF
    return (x | (x >> 16)) & 0x00000000FFFFFFFF


def _spread(x: int) -> int:
    """Inverse of _compact on 32-bit values."""
    x &= 0xFFFFFFFF
    x = (x | (x << 16)) & 0x0000FFFF0000FFFF
    x = (x | (x << 8)) & 0x00FF00FF00FF00FF
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0F
    x = (x | (x << 2)) & 0x3333333333333333
    return (x | (x << 1)) & _EVEN_BITS


def _even_digits(x: int) -> int:
    """Bits 0, 2, 4, ... of an integer of any size, packed together."""
    result, shift = 0, 0
    while x:
        result |= _compact(x & ((1 << _CHUNK) - 1)) << shift
        x >>= _CHUNK
        shift += _CHUNK // 2
    return result


def _interleave(x: int) -> int:
    """Inverse of _even_digits: bit i of x moves to bit 2i."""
    result, shift = 0, 0
    while x:
        result |= _spread(x & 0xFFFFFFFF) << shift
        x >>= 32
        shift += _CHUNK
    return result


@dataclass(frozen=True, order=True)
class Code:
    """The pair [n3, n5] attached to an integer."""

    n3: int
    n5: int

    @property
    def h(self) -> int:
        """Height n3 + n5."""
        return self.n3 + self.n5

    def as_list(self) -> list[int]:
        return [self.n3, self.n5]


def code_of(k: int) -> Code:
    """Code of a non-negative integer k.

    n3 = beta_1 + 2 beta_3 + 4 beta_5 + ... and n5 = beta_2 + 2 beta_4 + ...
    """
    if k < 0:
        raise PreconditionError(f"k must be non-negative, got {k}")
    rest = k >> 1
    return Code(_even_digits(rest), _even_digits(rest >> 1))


def code_to_odd(code: Code) -> int:
    """The odd integer whose code is `code`."""
    return code_to_even(code) | 1


def code_to_even(code: Code) -> int:
    """The even integer whose code is `code`."""
    if code.n3 < 0 or code.n5 < 0:
        raise PreconditionError("code entries must be non-negative")
    return (_interleave(code.n3) << 1) | (_interleave(code.n5) << 2)


def height(k: int) -> int:
    """h(k) = n3 + n5 of code(k)."""
    return code_of(k).h


def domination_key(k: int) -> tuple[int, int]:
    """Sort key realising the domination order within one parity class."""
    code = code_of(k)
    return (code.h, code.n5)


def dominates(k: int, ell: int) -> int:
    """Three-way domination comparison of two integers of the same parity.

    Returns:
        1 if k dominates ell, -1 if ell dominates k, 0 if k == ell

    Raises:
        PreconditionError: If k and ell have different parities
    """
    if (k - ell) % 2:
        raise PreconditionError(f"{k} and {ell} have different parities")
    key_k, key_ell = domination_key(k), domination_key(ell)
    return (key_k > key_ell) - (key_k < key_ell)


def domination_sorted(f: DeltaPoly) -> list[int]:
    """Exponents of an odd form from the dominant one down."""
    odd = as_odd_form(f)
    return sorted(odd.exponents, key=domination_key, reverse=True)


def h_of_form(f: DeltaPoly) -> Height:
    """Height of an odd form: h of its dominant exponent, -inf for zero."""
    odd = as_odd_form(f)
    if odd.is_zero():
        return NEG_INF
    return height(dominant_exponent(odd))


def witness_primes(code: Code) -> list[int]:
    """Primes applied, in order, to send the dominant monomial to Delta.

    T_3 lowers n3 by one and T_5 lowers n5 by one, so n3 threes followed by
    n5 fives reach code [0, 0].
    """
    return [3] * code.n3 + [5] * code.n5


@dataclass(frozen=True)
class NilpotenceReport:
    """g(f) with the dominant exponent, its code and the primes sending f to Delta.

    For a form outside the odd subspace, `dominant`, `code` and `witness`
    describe the odd part f_s that attains the maximum, and `frobenius_power`
    is its s.
    """

    g: Height
    dominant: int | None = None
    code: Code | None = None
    witness: list[int] = field(default_factory=list)
    derived: bool = False
    frobenius_power: int = 0

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready mapping; derived reports also carry the Frobenius power."""
        data: dict[str, Any] = {
            "g": format_height(self.g),
            "dominant": self.dominant,
            "code": self.code.as_list() if self.code else None,
            "witness": list(self.witness),
        }
        if self.derived:
            data["derived"] = True
            data["frobenius_power"] = self.frobenius_power
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _odd_report(f: OddForm) -> NilpotenceReport:
    """Report for a nonzero odd form, read off its dominant exponent."""
    m1 = dominant_exponent(f)
    code = code_of(m1)
    return NilpotenceReport(
        g=code.h + 1, dominant=m1, code=code, witness=witness_primes(code)
    )


def nilpotence_order(f: DeltaPoly) -> NilpotenceReport:
    """Nilpotence order g(f) of a cusp form.

    Nonzero odd forms get g = h(f) + 1. A general cusp form is split as
    sum f_s^(2^s); T_p commutes with squaring and keeps the parts apart, so
    g(f) is the largest g(f_s), and the report is marked derived.

    Raises:
        PreconditionError: If f has a constant term
    """
    require_parabolic(f)
    if f.is_zero():
        return NilpotenceReport(g=NEG_INF)
    if f.is_odd_form():
        return _odd_report(as_odd_form(f))
    best: NilpotenceReport | None = None
    for s, part in two_power_decompose(f):
        report = _odd_report(part)
        if best is None or report.g > best.g:
            best = NilpotenceReport(
                g=report.g,
                dominant=report.dominant,
                code=report.code,
                witness=report.witness,
                derived=True,
                frobenius_power=s,
            )
    assert best is not None
    return best


def g_of(f: DeltaPoly) -> Height:
    """Shorthand for nilpotence_order(f).g."""
    return nilpotence_order(f).g


def _require_nonzero_odd(f: DeltaPoly) -> OddForm:
    """Narrow f to a nonzero odd form.

    Raises:
        PreconditionError: If f is zero or has an even exponent
    """
    odd = as_odd_form(f)
    if odd.is_zero():
        raise PreconditionError("a nonzero odd form is required")
    return odd


def witness_check(f: DeltaPoly) -> bool:
    """Check T_3^n3(m_1) T_5^n5(m_1) f = Delta."""
    odd = _require_nonzero_odd(f)
    code = code_of(dominant_exponent(odd))
    return apply_sequence(witness_primes(code), odd) == DELTA


def check_h_decrease(f: DeltaPoly, p: int) -> bool:
    """Check h(T_p f) <= h(f) - 1."""
    odd = _require_nonzero_odd(f)
    return h_of_form(hecke_direct(p, odd)) <= h_of_form(odd) - 1


def check_code_shift(f: DeltaPoly, which: int) -> bool:
    """Check that T_3 (or T_5) lowers the code of the dominant exponent by one step.

    For which = 3 the dominant exponent of T_3 f must have code
    [n3(m_1) - 1, n5(m_1)]; for which = 5, [n3(m_1), n5(m_1) - 1].

    Raises:
        PreconditionError: If which is not 3 or 5, or the relevant digit sum is 0
    """
    odd = _require_nonzero_odd(f)
    code = code_of(dominant_exponent(odd))
    if which == 3:
        if code.n3 < 1:
            raise PreconditionError(f"n3 of the dominant exponent is 0 ({code})")
        shifted = Code(code.n3 - 1, code.n5)
    elif which == 5:
        if code.n5 < 1:
            raise PreconditionError(f"n5 of the dominant exponent is 0 ({code})")
        shifted = Code(code.n3, code.n5 - 1)
    else:
        raise PreconditionError(f"code shift is stated for T_3 and T_5, not T_{which}")
    image = as_odd_form(hecke_direct(which, odd))
    if image.is_zero() or h_of_form(image) != code.h - 1:
        return False
    return code_of(dominant_exponent(image)) == shifted


def check_corollary_pm1(f: DeltaPoly, p: int) -> bool:
    """For p = +-1 (mod 8), check g(T_p f) <= g(f) - 2.

    Raises:
        PreconditionError: If p is not an odd prime congruent to +-1 mod 8
    """
    validate_odd_prime(p)
    if p % 8 not in (1, 7):
        raise PreconditionError(f"p = {p} is not congruent to +-1 mod 8")
    odd = _require_nonzero_odd(f)
    return g_of(hecke_direct(p, odd)) <= g_of(odd) - 2


def check_parity_pm1(f: DeltaPoly, p: int) -> bool:
    """For p = +-1 (mod 8), check that T_p keeps the parity of h on each grade.

    Every nonzero part f_i of f in a single grade must satisfy
    h(T_p f_i) = h(f_i) (mod 2) unless T_p f_i = 0. For a form spread over
    several grades the parity of h(T_p f) itself can change, because the
    part carrying the dominant exponent may be annihilated.
    """
    validate_odd_prime(p)
    if p % 8 not in (1, 7):
        raise PreconditionError(f"p = {p} is not congruent to +-1 mod 8")
    odd = _require_nonzero_odd(f)
    for part in grade_decompose(odd).values():
        if part.is_zero():
            continue
        image = hecke_direct(p, part)
        if not image.is_zero() and (h_of_form(image) - h_of_form(part)) % 2:
            return False
    return True


def check_order_drop(f: DeltaPoly, p: int) -> bool:
    """Check g(f) >= g(T_p f) + 1."""
    odd = _require_nonzero_odd(f)
    return g_of(odd) >= g_of(hecke_direct(p, odd)) + 1


def odd_exponents(max_degree: int) -> list[int]:
    """Odd exponents 1, 3, ..., up to max_degree."""
    return list(range(1, max_degree + 1, 2))


def kernel_scan(max_degree: int) -> list[OddForm]:
    """All nonzero odd forms of degree <= max_degree killed by both T_3 and T_5.

    T_3 and T_5 are linear, so the image of each candidate is the XOR of the
    images of its monomials, which are computed once.
    """
    exponents = odd_exponents(max_degree)
    images = [
        (hecke_direct(3, DeltaPoly.of(m)).mask, hecke_direct(5, DeltaPoly.of(m)).mask)
        for m in exponents
    ]
    kernel: list[OddForm] = []
    for subset in range(1, 1 << len(exponents)):
        t3 = t5 = 0
        rest, index = subset, 0
        while rest:
            if rest & 1:
                t3 ^= images[index][0]
                t5 ^= images[index][1]
            rest >>= 1
            index += 1
        if not t3 and not t5:
            kernel.append(
                OddForm(
                    frozenset(m for i, m in enumerate(exponents) if subset >> i & 1)
                )
            )
    return kernel


def brute_force_order(f: DeltaPoly, primes: Sequence[int]) -> Height:
    """Nilpotence order of f for products of T_p with p restricted to `primes`.

    Exhaustive memoized search: the order is 0 for the zero form inside the
    search and 1 + max over p of the order of T_p f otherwise. The zero form
    itself reports -inf.
    """
    require_parabolic(f)
    if not primes:
        raise PreconditionError("at least one prime is required")
    for p in primes:
        validate_odd_prime(p)
    if f.is_zero():
        return NEG_INF
    memo: dict[DeltaPoly, int] = {}

    def depth(form: DeltaPoly) -> int:
        if form.is_zero():
            return 0
        known = memo.get(form)
        if known is None:
            known = 1 + max(depth(hecke_direct(p, form)) for p in primes)
            memo[form] = known
        return known

    return depth(f)


def height_bounds_check(k: int) -> bool:
    """For odd k > 0, check sqrt(k)/2 < h(k) + 1 < 3 sqrt(k)/2 exactly."""
    big_h = height(k) + 1
    return k < 4 * big_h * big_h < 9 * k


def order_bound_check(k: int) -> bool:
    """For odd k > 0, check g(Delta^k) = h(k) + 1 <= (k + 1) / 2."""
    return 2 * (height(k) + 1) <= k + 1

