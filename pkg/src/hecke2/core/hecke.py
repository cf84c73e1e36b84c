"""The Hecke operator T_p on polynomials in Delta, computed through q-expansions."""

from __future__ import annotations

import logging
import threading

from hecke2.core.deltapoly import (
    ZERO,
    DeltaPoly,
    as_odd_form,
    from_series,
    require_parabolic,
    to_series,
    two_power_decompose,
)
from hecke2.core.f2series import delta_pow, hecke_series
from hecke2.core.utils import validate_odd_prime

logger = logging.getLogger(__name__)


class HeckeCache:
    """In-process memo of T_p(Delta^k) for odd k, stored as exponent masks.

    Lookups go through plain dict reads. Insertion and clearing take the lock that
    belongs to p, so workers sweeping different primes never contend. Locks
    outlive `clear`.
    """

    def __init__(self) -> None:
        self._tables: dict[int, dict[int, int]] = {}
        self._locks: dict[int, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def get(self, p: int, k: int) -> int | None:
        table = self._tables.get(p)
        if table is None:
            return None
        return table.get(k)

    def _lock_for(self, p: int) -> threading.Lock:
        lock = self._locks.get(p)
        if lock is None:
            with self._registry_lock:
                lock = self._locks.setdefault(p, threading.Lock())
        return lock

    def put(self, p: int, k: int, mask: int) -> None:
        """Store the mask of T_p(Delta^k) unless one is already present."""
        with self._lock_for(p):
            self._tables.setdefault(p, {}).setdefault(k, mask)

    def clear(self) -> None:
        """Drop every table, each under the lock of its prime."""
        with self._registry_lock:
            locks = list(self._locks.items())
        for p, lock in locks:
            with lock:
                self._tables.pop(p, None)

    def size(self) -> int:
        return sum(len(table) for table in list(self._tables.values()))


_CACHE = HeckeCache()


def clear_cache() -> None:
    """Forget every memoized T_p(Delta^k)."""
    _CACHE.clear()


def _odd_power_image(p: int, k: int) -> int:
    """T_p(Delta^k) for odd k as an exponent mask.

    The image has degree <= k - 2, so the q-expansion of Delta^k is needed
    only below p * (k - 1).
    """
    cached = _CACHE.get(p, k)
    if cached is not None:
        return cached
    bound = k - 2
    if bound < 1:
        mask = 0
    else:
        series = delta_pow(k, p * (bound + 1))
        mask = from_series(hecke_series(p, series), bound).mask
    _CACHE.put(p, k, mask)
    return mask


def hecke_direct(p: int, f: DeltaPoly) -> DeltaPoly:
    """T_p(f) for a cusp form f.

    Odd forms are handled monomial by monomial (T_p is linear) from memoized
    q-expansion computations. Other forms go through f = sum f_s^(2^s), since
    T_p commutes with squaring.

    Args:
        p: Odd prime
        f: Form without constant term

    Returns:
        T_p(f) as a polynomial in Delta

    Raises:
        PreconditionError: If p is not an odd prime or f has a constant term
        NotAPolynomial: If a q-expansion fails to invert (internal fault)
    """
    validate_odd_prime(p)
    require_parabolic(f)
    result = 0
    for s, part in two_power_decompose(f):
        image = 0
        for m in part.exponents:
            image ^= _odd_power_image(p, m)
        result ^= DeltaPoly.from_mask(image).frobenius(s).mask
    return DeltaPoly.from_mask(result) if result else ZERO


def hecke_odd_form_series(p: int, f: DeltaPoly) -> DeltaPoly:
    """T_p(f) for an odd form in a single q-expansion pass, bypassing the memo.

    This is the unsplit route: expand f to precision p * (deg f - 1), apply
    T_p coefficientwise and invert with degree bound deg f - 2.
    """
    validate_odd_prime(p)
    odd = as_odd_form(f)
    bound = odd.degree - 2
    if bound < 1:
        return ZERO
    series = to_series(odd, p * (bound + 1))
    return from_series(hecke_series(p, series), bound)


def hecke_power(p: int, k: int) -> DeltaPoly:
    """T_p(Delta^k) for any k >= 0, with T_p(Delta^0) = 0."""
    if k == 0:
        validate_odd_prime(p)
        return ZERO
    return hecke_direct(p, DeltaPoly.of(k))


def apply_sequence(primes: list[int], f: DeltaPoly) -> DeltaPoly:
    """Apply T_p for each p of `primes` in turn, first element first."""
    for p in primes:
        f = hecke_direct(p, f)
        if f.is_zero():
            break
    return f
