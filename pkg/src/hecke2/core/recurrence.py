"""The polynomials F_p(X, Y) and the linear recurrence they give for T_p(Delta^k).

For k >= p + 1,

    T_p(D^k) = s_1(D) T_p(D^(k-1)) + ... + s_(p+1)(D) T_p(D^(k-p-1))   (D = Delta)

where F_p(X, Y) = Y^(p+1) + s_1(X) Y^p + ... + s_(p+1)(X). F_p is found by
linear algebra over GF(2): every coefficient of every s_r allowed by the
degree and congruence constraints is an unknown, and each instance of the
recurrence contributes one scalar equation per power of Delta.
"""

from __future__ import annotations

import json
import logging
import threading
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

from hecke2.core.deltapoly import DeltaPoly
from hecke2.core.errors import PreconditionError, SolverInconsistent
from hecke2.core.f2series import clmul, iter_bits
from hecke2.core.gf2 import GF2System
from hecke2.core.hecke import hecke_power
from hecke2.core.utils import validate_odd_prime

logger = logging.getLogger(__name__)

ROUND_SIZE = 8
HELD_OUT = 8


@dataclass(frozen=True)
class FpPolynomial:
    """F_p(X, Y) as the set of exponent pairs (i, j) of its monomials X^i Y^j."""

    p: int
    monomials: frozenset[tuple[int, int]]

    @cached_property
    def slices(self) -> tuple[int, ...]:
        """(s_0, s_1, ..., s_(p+1)) as masks of X-degrees; s_r multiplies Y^(p+1-r)."""
        masks = [0] * (self.p + 2)
        for i, j in self.monomials:
            if j <= self.p + 1:
                masks[self.p + 1 - j] |= 1 << i
        return tuple(masks)

    def s(self, r: int) -> int:
        """s_r(X) as a mask of X-degrees."""
        return self.slices[r] if 0 <= r <= self.p + 1 else 0

    def violations(self) -> list[str]:
        """Every structural property F_p fails; empty when it is well formed."""
        p = self.p
        problems: list[str] = []
        for i, j in sorted(self.monomials):
            if (j, i) not in self.monomials:
                problems.append(f"X^{i}*Y^{j} has no mirror X^{j}*Y^{i}")
            if j > p + 1:
                problems.append(f"X^{i}*Y^{j} exceeds Y-degree {p + 1}")
            elif j <= p:
                r = p + 1 - j
                if i > r:
                    problems.append(f"s_{r} has degree {i} > {r}")
                elif (i - p * r) % 8:
                    problems.append(f"s_{r} has degree {i} off {p * r} mod 8")
        if (0, p + 1) not in self.monomials:
            problems.append(f"Y^{p + 1} is missing")
        return problems

    def is_valid(self) -> bool:
        """True when violations() is empty."""
        return not self.violations()

    def is_symmetric(self) -> bool:
        """F_p(X, Y) = F_p(Y, X)."""
        return all((j, i) in self.monomials for i, j in self.monomials)

    def render_text(self) -> str:
        """Text form, terms by decreasing Y-degree then decreasing X-degree."""
        terms = sorted(self.monomials, key=lambda ij: (-ij[1], -ij[0]))
        return f"F_{self.p}(X,Y) = " + " + ".join(_monomial(i, j) for i, j in terms)

    def to_dict(self) -> dict[str, Any]:
        """Cache-file shape: p and the sorted [i, j] pairs."""
        return {"p": self.p, "monomials": [list(ij) for ij in sorted(self.monomials)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> FpPolynomial:
        """Rebuild from `to_dict` output.

        Raises:
            ValueError: If the data does not have the expected shape
        """
        try:
            p = int(data["p"])
            monomials = frozenset((int(i), int(j)) for i, j in data["monomials"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed F_p data: {e}") from e
        return cls(p, monomials)


def _power(var: str, exponent: int) -> str:
    if exponent == 1:
        return var
    return f"{var}^{exponent}"


def _monomial(i: int, j: int) -> str:
    """Render X^i Y^j, dropping unit exponents and zero powers."""
    parts = [_power(var, e) for var, e in (("X", i), ("Y", j)) if e]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class FpSolution:
    """Outcome of the F_p solver with the bookkeeping it used."""

    fp: FpPolynomial
    unknowns: int
    equations: int
    last_k: int


def candidate_monomials(p: int) -> list[tuple[int, int]]:
    """Monomials X^i Y^(p+1-r) allowed in s_r: i <= r and i = p*r (mod 8)."""
    return [
        (i, p + 1 - r)
        for r in range(1, p + 2)
        for i in range((p * r) % 8, r + 1, 8)
    ]


class _PowerImages:
    """T_p(Delta^k) masks for a fixed p, computed on demand by the direct route."""

    def __init__(self, p: int) -> None:
        self.p = p
        self._values: dict[int, int] = {}

    def __call__(self, k: int) -> int:
        value = self._values.get(k)
        if value is None:
            value = hecke_power(self.p, k).mask
            self._values[k] = value
        return value


def _add_instance(
    system: GF2System,
    unknowns: list[tuple[int, int]],
    images: _PowerImages,
    k: int,
) -> None:
    """Add the scalar equations of the recurrence at index k."""
    p = images.p
    rows: dict[int, int] = {}
    for index, (i, j) in enumerate(unknowns):
        r = p + 1 - j
        for e in iter_bits(images(k - r)):
            rows[e + i] = rows.get(e + i, 0) | (1 << index)
    target = images(k)
    for e in sorted(set(rows) | set(iter_bits(target))):
        system.add_equation(rows.get(e, 0), (target >> e) & 1)


def predict(fp: FpPolynomial, lookup: Callable[[int], int], k: int) -> int:
    """Right-hand side of the recurrence at k, given T_p(Delta^(k-r)) through lookup."""
    result = 0
    for r, s_r in enumerate(fp.slices):
        if r and s_r:
            result ^= clmul(s_r, lookup(k - r))
    return result


def solve_fp(p: int, max_rounds: int | None = None) -> FpSolution:
    """Determine F_p from T_p(Delta^k) values and check it on held-out k.

    Instances k = p+1, p+2, ... are added in rounds of ROUND_SIZE until the
    system has full rank; the solution is then checked against the direct
    computation for HELD_OUT further values of k.

    Raises:
        PreconditionError: If p is not an odd prime
        SolverInconsistent: If the equations contradict each other, never reach
            full rank, or the solution fails a held-out check
    """
    validate_odd_prime(p)
    unknowns = candidate_monomials(p)
    system = GF2System(len(unknowns))
    images = _PowerImages(p)
    rounds = max_rounds if max_rounds is not None else 4 * (p + 1) // ROUND_SIZE + 4
    k = p + 1
    for _ in range(rounds):
        for _ in range(ROUND_SIZE):
            _add_instance(system, unknowns, images, k)
            k += 1
        logger.debug(
            "F_%d: rank %d/%d after k <= %d (%d equations)",
            p,
            system.rank,
            system.unknowns,
            k - 1,
            system.equations_seen,
        )
        if system.is_determined():
            break
    else:
        raise SolverInconsistent(
            f"F_{p}: rank {system.rank} of {system.unknowns} after k <= {k - 1}"
        )
    values = system.solve()
    monomials = frozenset(unknowns[index] for index in iter_bits(values))
    fp = FpPolynomial(p, monomials | {(0, p + 1)})
    for held in range(k, k + HELD_OUT):
        if predict(fp, images, held) != images(held):
            raise SolverInconsistent(f"F_{p} fails the recurrence at k = {held}")
    logger.debug("F_%d solved with instances k = %d..%d", p, p + 1, k - 1)
    return FpSolution(fp, len(unknowns), system.equations_seen, k - 1)


def compute_fp(p: int) -> FpPolynomial:
    """The polynomial F_p(X, Y) driving the recurrence for T_p(Delta^k)."""
    return solve_fp(p).fp


class RecurrenceEngine:
    """Runs the recurrence for one F_p, seeded by T_p(Delta^k) for k <= p."""

    def __init__(self, fp: FpPolynomial) -> None:
        self.fp = fp
        self._values = [hecke_power(fp.p, k).mask for k in range(fp.p + 1)]
        self._lock = threading.Lock()

    def value(self, k: int) -> int:
        """Mask of T_p(Delta^k), extending the stored prefix up to k.

        Raises:
            ValueError: If k is negative
        """
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        with self._lock:
            while len(self._values) <= k:
                self._values.append(
                    predict(self.fp, self._values.__getitem__, len(self._values))
                )
            return self._values[k]


@lru_cache(maxsize=64)
def _engine(fp: FpPolynomial) -> RecurrenceEngine:
    """Engine for fp, memoized per F_p."""
    return RecurrenceEngine(fp)


def hecke_recurrence(fp: FpPolynomial, k: int) -> DeltaPoly:
    """T_p(Delta^k) from the recurrence of F_p."""
    return DeltaPoly.from_mask(_engine(fp).value(k))


# Denominators t^(p+1) F_p(Delta, 1/t) of the generating series of T_p(Delta^k),
# as {power of t: coefficient in Delta}; the numerator is Delta t^p in both cases.
GENERATING_DENOMINATORS: dict[int, dict[int, DeltaPoly]] = {
    3: {0: DeltaPoly.of(0), 3: DeltaPoly.of(1), 4: DeltaPoly.of(4)},
    5: {
        0: DeltaPoly.of(0),
        2: DeltaPoly.of(2),
        4: DeltaPoly.of(4),
        5: DeltaPoly.of(1),
        6: DeltaPoly.of(6),
    },
}


def generating_check(p: int, K: int) -> bool:
    """Check sum_{k=1}^{K} T_p(Delta^k) t^k * D(t) = Delta t^p modulo t^(K+1).

    Raises:
        PreconditionError: If p is not 3 or 5
        ValueError: If K < p
    """
    if p not in GENERATING_DENOMINATORS:
        raise PreconditionError(
            f"closed-form generating series known for p = 3, 5, not {p}"
        )
    if K < p:
        raise ValueError(f"K must be at least {p}, got {K}")
    series = [DeltaPoly()] + [hecke_power(p, k) for k in range(1, K + 1)]
    denominator = GENERATING_DENOMINATORS[p]
    numerator = DeltaPoly.of(1)
    for n in range(K + 1):
        coefficient = DeltaPoly()
        for d, term in denominator.items():
            if d <= n:
                coefficient = coefficient + term * series[n - d]
        expected = numerator if n == p else DeltaPoly()
        if coefficient != expected:
            logger.debug("generating series for p=%d differs at t^%d", p, n)
            return False
    return True


def closed_form_check(fp: FpPolynomial) -> bool:
    """Check F_p(X, Y) = (X + Y)^(p+1) + XY, the shape F_3 and F_5 take."""
    p = fp.p
    expected: set[tuple[int, int]] = {(1, 1)}
    # (X+Y)^(p+1) mod 2: binomial(p+1, i) is odd iff i's bits lie inside p+1's.
    for i in range(p + 2):
        if i & (p + 1) == i:
            expected ^= {(i, p + 1 - i)}
    return fp.monomials == frozenset(expected)
