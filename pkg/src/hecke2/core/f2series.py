"""Truncated power series in q over the two-element field.

A series is stored as a Python integer used as a bit array: bit n holds the
coefficient of q^n. Addition is XOR and multiplication is carryless, so the
integer's own word-level operations do the packing and the blockwise work.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from hecke2.core.utils import validate_odd_prime

# _SPREAD[b] holds byte b with a zero bit inserted after each of its bits.
_SPREAD = [
    sum(((b >> i) & 1) << (2 * i) for i in range(8)).to_bytes(2, "little")
    for b in range(256)
]


def _mask(prec: int) -> int:
    return (1 << prec) - 1 if prec > 0 else 0


def iter_bits(value: int) -> Iterator[int]:
    """Yield the indices of the set bits of a non-negative integer, lowest first."""
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def clmul(a: int, b: int, limit: int | None = None) -> int:
    """Carryless product of two bit-packed GF(2) polynomials.

    Args:
        a: First operand, bit i is the coefficient of degree i
        b: Second operand
        limit: When given, terms of degree >= limit are discarded

    Returns:
        The XOR convolution of a and b
    """
    if not a or not b:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    result = 0
    for shift in iter_bits(a):
        if limit is not None and shift >= limit:
            break
        result ^= b << shift
    if limit is not None:
        result &= _mask(limit)
    return result


def spread_bits(value: int) -> int:
    """Move bit n of value to bit 2n (Frobenius on a bit-packed series)."""
    if not value:
        return 0
    raw = value.to_bytes((value.bit_length() + 7) // 8, "little")
    return int.from_bytes(b"".join(_SPREAD[byte] for byte in raw), "little")


def decimate_bits(value: int, step: int, count: int) -> int:
    """Collect bits 0, step, 2*step, ... of value into positions 0, 1, 2, ...

    Args:
        value: Bit-packed source
        step: Stride between the sampled bits
        count: Number of sampled positions kept

    Returns:
        Integer whose bit n is bit n*step of value, for n < count
    """
    if count <= 0 or not value:
        return 0
    digits = format(value, "b")[::-1][::step][:count]
    return int(digits[::-1], 2)


@dataclass(frozen=True)
class F2Series:
    """A power series in q over GF(2), known exactly below `prec`."""

    bits: int
    prec: int

    def __post_init__(self) -> None:
        if self.prec < 0:
            raise ValueError(f"precision must be non-negative, got {self.prec}")
        if self.bits < 0:
            raise ValueError("coefficient bits must be non-negative")
        object.__setattr__(self, "bits", self.bits & _mask(self.prec))

    @classmethod
    def zero(cls, prec: int) -> F2Series:
        return cls(0, prec)

    @classmethod
    def one(cls, prec: int) -> F2Series:
        return cls(1, prec)

    @classmethod
    def from_support(cls, support: Iterable[int], prec: int) -> F2Series:
        """Build a series from the exponents carrying a coefficient 1.

        Repeated exponents cancel in pairs.
        """
        bits = 0
        for n in support:
            bits ^= 1 << n
        return cls(bits, prec)

    def is_zero(self) -> bool:
        return self.bits == 0

    def valuation(self) -> int | None:
        """Index of the lowest nonzero coefficient, None for the zero series."""
        if not self.bits:
            return None
        return (self.bits & -self.bits).bit_length() - 1

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))

    def truncate(self, prec: int) -> F2Series:
        return F2Series(self.bits, min(prec, self.prec))

    def agrees_with(self, other: F2Series) -> bool:
        """Compare two series on their common window only."""
        window = _mask(min(self.prec, other.prec))
        return (self.bits & window) == (other.bits & window)

    def __xor__(self, other: F2Series) -> F2Series:
        return F2Series(self.bits ^ other.bits, min(self.prec, other.prec))

    __add__ = __xor__


def delta_series(prec: int) -> F2Series:
    """The mod-2 reduction of Delta: the sum of q^((2m+1)^2), to precision prec."""
    bits = 0
    for root in range(1, isqrt(max(prec - 1, 0)) + 1, 2):
        bits |= 1 << (root * root)
    return F2Series(bits, prec)


def mul(a: F2Series, b: F2Series) -> F2Series:
    """Product of two series with valuation-aware precision.

    The result is exact below min(a.prec + val(b), b.prec + val(a)); when
    either factor vanishes on its window the bound falls back to the plain
    minimum of the two precisions.
    """
    val_a, val_b = a.valuation(), b.valuation()
    if val_a is None or val_b is None:
        return F2Series.zero(min(a.prec, b.prec))
    prec = min(a.prec + val_b, b.prec + val_a)
    return F2Series(clmul(a.bits, b.bits, prec), prec)


def square(a: F2Series) -> F2Series:
    """Frobenius: f(q) -> f(q^2), which equals f^2 in characteristic 2."""
    return F2Series(spread_bits(a.bits), max(2 * a.prec - 1, 0))


@lru_cache(maxsize=2048)
def delta_pow(k: int, prec: int) -> F2Series:
    """The q-expansion of Delta^k to precision prec.

    Binary exponentiation: the running base Delta(q^(2^s)) is produced by
    repeated squaring and is sparse, so every product is cheap.
    """
    if k < 0:
        raise ValueError(f"exponent must be non-negative, got {k}")
    result = F2Series.one(prec)
    base = delta_series(prec)
    while k:
        if k & 1:
            result = mul(result, base).truncate(prec)
        k >>= 1
        if k:
            base = square(base).truncate(prec)
    return result


def hecke_series(p: int, f: F2Series) -> F2Series:
    """Apply T_p to a q-expansion: gamma(n) = c(pn) + c(n/p), the last when p | n.

    Args:
        p: Odd prime
        f: Series known below f.prec

    Returns:
        T_p f, known below ceil(f.prec / p)

    Raises:
        PreconditionError: If p is not an odd prime
    """
    validate_odd_prime(p)
    prec = -(-f.prec // p)
    bits = decimate_bits(f.bits, p, prec)
    for m in iter_bits(f.bits & _mask(-(-prec // p))):
        bits ^= 1 << (m * p)
    return F2Series(bits, prec)
