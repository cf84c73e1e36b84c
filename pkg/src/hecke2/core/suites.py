"""Verification suites behind `hecke2 verify`.

A suite expands its parameters into a list of cases and checks each case
with a module-level function, so cases can be shipped to worker processes.
Results are gathered in case order, and the first failing case is reported.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Any

from hecke2.core.deltapoly import DELTA, DeltaPoly, OddForm
from hecke2.core.formtext import render_form
from hecke2.core.hecke import hecke_direct
from hecke2.core.nilpotence import (
    brute_force_order,
    check_code_shift,
    check_corollary_pm1,
    check_h_decrease,
    check_order_drop,
    check_parity_pm1,
    code_of,
    h_of_form,
    height_bounds_check,
    kernel_scan,
    order_bound_check,
    witness_check,
)
from hecke2.core.recurrence import (
    closed_form_check,
    compute_fp,
    generating_check,
    hecke_recurrence,
)
from hecke2.core.utils import first_odd_primes, odd_primes_up_to

logger = logging.getLogger(__name__)

Case = Any
Outcome = tuple[int, str | None]

COROLLARY_PRIMES = (7, 17, 23, 31, 41, 47)
RANDOM_MAX_DEGREE = 199
H_BOUNDS_CHUNK = 50_000


@dataclass(frozen=True)
class SuiteParams:
    """Bounds for a suite run; None means the suite's own default."""

    max_k: int | None = None
    max_p: int | None = None
    max_degree: int | None = None
    K: int | None = None
    samples: int | None = None
    seed: int = 0
    witness_prime_count: int = 15

    def with_defaults(self, defaults: dict[str, int]) -> SuiteParams:
        filled = {
            name: value
            for name, value in defaults.items()
            if getattr(self, name) is None
        }
        return replace(self, **filled)


@dataclass
class SuiteResult:
    """Summary of one suite run."""

    name: str
    checked: int = 0
    passed: bool = True
    counterexample: str | None = None


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    cases: Callable[[SuiteParams], list[Case]]
    check: Callable[[SuiteParams, Case], Outcome]
    defaults: dict[str, int] = field(default_factory=dict)


def _random_odd_form(
    rng: random.Random, max_degree: int, residue: int = 0
) -> OddForm:
    """A nonzero odd form of degree <= max_degree, optionally inside one grade."""
    if residue:
        pool = list(range(residue, max_degree + 1, 8))
    else:
        pool = list(range(1, max_degree + 1, 2))
    while True:
        chosen = [m for m in pool if rng.getrandbits(1)]
        if chosen:
            return OddForm(frozenset(chosen))


def _expected_power_image(p: int, k: int) -> DeltaPoly:
    """T_p(Delta^k) for k in (1, 3, 5, 7) from the residue of p."""
    if k == 1:
        return DeltaPoly()
    if k == 3:
        return DELTA if p % 8 == 3 else DeltaPoly()
    if k == 5:
        return DELTA if p % 8 == 5 else DeltaPoly()
    images = {3: DeltaPoly.of(5), 5: DeltaPoly.of(3)}
    if p % 8 in images:
        return images[p % 8]
    return DELTA if p % 16 == 7 else DeltaPoly()


# Each check returns (number of items checked, first counterexample or None).


def _check_examples(_params: SuiteParams, p: int) -> Outcome:
    for k in (1, 3, 5, 7):
        got = hecke_direct(p, DeltaPoly.of(k))
        if got != _expected_power_image(p, k):
            return 4, f"T_{p}(D^{k}) = {render_form(got)}"
    return 4, None


def _check_fp_structure(_params: SuiteParams, p: int) -> Outcome:
    fp = compute_fp(p)
    problems = fp.violations()
    if problems:
        return 1, f"F_{p}: {problems[0]}"
    if p in (3, 5) and not closed_form_check(fp):
        return 1, f"F_{p} is not (X+Y)^{p + 1} + XY: {fp.render_text()}"
    return 1, None


def _check_recurrence(params: SuiteParams, p: int) -> Outcome:
    assert params.max_k is not None
    fp = compute_fp(p)
    checked = 0
    for k in range(1, params.max_k + 1, 2):
        checked += 1
        if hecke_recurrence(fp, k) != hecke_direct(p, DeltaPoly.of(k)):
            return checked, f"p = {p}, k = {k}: recurrence differs from direct"
    return checked, None


def _check_theorem5(params: SuiteParams, k: int) -> Outcome:
    f = DeltaPoly.of(k)
    if not witness_check(f):
        return 1, f"witness chain for D^{k} does not reach D"
    for p in first_odd_primes(params.witness_prime_count):
        if not check_h_decrease(f, p):
            return 1, f"h(T_{p}(D^{k})) >= h(D^{k})"
    return 1, None


def _check_code_shift(_params: SuiteParams, k: int) -> Outcome:
    code = code_of(k)
    checked = 0
    for which, digits in ((3, code.n3), (5, code.n5)):
        if digits >= 1:
            checked += 1
            if not check_code_shift(DeltaPoly.of(k), which):
                return checked, f"T_{which}(D^{k}) does not shift the code {code}"
    return checked, None


def _check_corollary(
    _params: SuiteParams, case: tuple[int, tuple[int, ...]]
) -> Outcome:
    p, exponents = case
    f = OddForm(frozenset(exponents))
    if not check_corollary_pm1(f, p):
        return 1, f"g(T_{p} f) > g(f) - 2 for f = {render_form(f)}"
    return 1, None


def _check_kernel(_params: SuiteParams, max_degree: int) -> Outcome:
    kernel = kernel_scan(max_degree)
    checked = (1 << ((max_degree + 1) // 2)) - 1
    if kernel != [DELTA]:
        found = ", ".join(render_form(f) for f in kernel) or "nothing"
        return checked, f"kernel of T_3 and T_5 up to degree {max_degree}: {found}"
    return checked, None


def _check_h_bounds(_params: SuiteParams, window: tuple[int, int]) -> Outcome:
    start, stop = window
    checked = 0
    for k in range(start | 1, stop, 2):
        checked += 1
        if not height_bounds_check(k):
            return checked, f"k = {k}: h(k) + 1 outside (sqrt(k)/2, 3 sqrt(k)/2)"
        if not order_bound_check(k):
            return checked, f"k = {k}: h(k) + 1 > (k + 1)/2"
    return checked, None


def _check_grading(
    _params: SuiteParams, case: tuple[int, int, tuple[int, ...]]
) -> Outcome:
    p, grade, exponents = case
    f = OddForm(frozenset(exponents))
    image = hecke_direct(p, f)
    target = p * grade % 8
    stray = [j for j in image if j % 8 != target]
    if stray:
        return 1, f"T_{p}({render_form(f)}) has D^{stray[0]} outside grade {target}"
    return 1, None


def _check_genfun(params: SuiteParams, p: int) -> Outcome:
    assert params.K is not None
    if not generating_check(p, params.K):
        return 1, f"generating series for p = {p} fails through t^{params.K}"
    return 1, None


def _check_minimality(params: SuiteParams, exponents: tuple[int, ...]) -> Outcome:
    f = OddForm(frozenset(exponents))
    primes = first_odd_primes(params.witness_prime_count)
    expected = h_of_form(f) + 1
    found = brute_force_order(f, primes)
    if found != expected:
        return 1, f"order of {render_form(f)} over {len(primes)} primes is {found}"
    return 1, None


def _check_order_drop(
    _params: SuiteParams, case: tuple[int, tuple[int, ...]]
) -> Outcome:
    p, exponents = case
    f = OddForm(frozenset(exponents))
    if not check_order_drop(f, p):
        return 1, f"g(T_{p} f) >= g(f) for f = {render_form(f)}"
    if p % 8 in (1, 7) and not check_parity_pm1(f, p):
        return 1, f"h(T_{p} f) and h(f) differ in parity for f = {render_form(f)}"
    return 1, None


def _primes_through(params: SuiteParams) -> list[int]:
    assert params.max_p is not None
    return odd_primes_up_to(params.max_p)


def _odd_ks(params: SuiteParams) -> list[int]:
    assert params.max_k is not None
    return list(range(1, params.max_k + 1, 2))


def _corollary_cases(params: SuiteParams) -> list[tuple[int, tuple[int, ...]]]:
    assert params.samples is not None
    rng = random.Random(params.seed)
    cases = []
    for p in COROLLARY_PRIMES:
        for _ in range(params.samples):
            f = _random_odd_form(rng, RANDOM_MAX_DEGREE)
            cases.append((p, tuple(f.ordered())))
    return cases


def _h_bounds_cases(params: SuiteParams) -> list[tuple[int, int]]:
    assert params.max_k is not None
    stop = params.max_k + 1
    return [
        (start, min(start + H_BOUNDS_CHUNK, stop))
        for start in range(1, stop, H_BOUNDS_CHUNK)
    ]


def _grading_cases(params: SuiteParams) -> list[tuple[int, int, tuple[int, ...]]]:
    assert params.samples is not None
    rng = random.Random(params.seed)
    primes = _primes_through(params)
    cases = []
    for _ in range(params.samples):
        p = rng.choice(primes)
        grade = rng.choice((1, 3, 5, 7))
        f = _random_odd_form(rng, RANDOM_MAX_DEGREE, grade)
        cases.append((p, grade, tuple(f.ordered())))
    return cases


def _minimality_cases(params: SuiteParams) -> list[tuple[int, ...]]:
    assert params.max_degree is not None
    exponents = list(range(1, params.max_degree + 1, 2))
    return [
        tuple(m for i, m in enumerate(exponents) if subset >> i & 1)
        for subset in range(1, 1 << len(exponents))
    ]


def _order_drop_cases(params: SuiteParams) -> list[tuple[int, tuple[int, ...]]]:
    assert params.samples is not None
    rng = random.Random(params.seed)
    primes = _primes_through(params)
    return [
        (rng.choice(primes), tuple(_random_odd_form(rng, RANDOM_MAX_DEGREE).ordered()))
        for _ in range(params.samples)
    ]


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite(
            "examples",
            "T_p of D, D^3, D^5, D^7 for odd primes p <= max_p",
            _primes_through,
            _check_examples,
            {"max_p": 100},
        ),
        Suite(
            "fp-structure",
            "symmetry, monicity and degree constraints of F_p for p <= max_p",
            _primes_through,
            _check_fp_structure,
            {"max_p": 31},
        ),
        Suite(
            "recurrence",
            "recurrence against direct T_p(D^k), odd k <= max_k, p <= max_p",
            _primes_through,
            _check_recurrence,
            {"max_p": 13, "max_k": 301},
        ),
        Suite(
            "theorem5",
            "witness chains and height decrease for D^k, odd k <= max_k",
            _odd_ks,
            _check_theorem5,
            {"max_k": 999},
        ),
        Suite(
            "code-shift",
            "T_3 and T_5 shift the code of the dominant exponent, odd k <= max_k",
            _odd_ks,
            _check_code_shift,
            {"max_k": 999},
        ),
        Suite(
            "corollaries",
            "g(T_p f) <= g(f) - 2 for p = +-1 mod 8 on random odd forms",
            _corollary_cases,
            _check_corollary,
            {"samples": 200},
        ),
        Suite(
            "kernel",
            "the common kernel of T_3 and T_5 up to max_degree is {D}",
            lambda params: [params.max_degree],
            _check_kernel,
            {"max_degree": 25},
        ),
        Suite(
            "h-bounds",
            "sqrt(k)/2 < h(k)+1 < 3 sqrt(k)/2 and h(k)+1 <= (k+1)/2, odd k <= max_k",
            _h_bounds_cases,
            _check_h_bounds,
            {"max_k": 1_000_000},
        ),
        Suite(
            "grading",
            "T_p maps grade i into grade p*i mod 8 on random forms, p <= max_p",
            _grading_cases,
            _check_grading,
            {"max_p": 47, "samples": 200},
        ),
        Suite(
            "genfun",
            "closed-form generating series for p = 3, 5 through t^K",
            lambda params: [3, 5],
            _check_genfun,
            {"K": 200},
        ),
        Suite(
            "minimality",
            "exhaustive order over the witness primes equals h+1, degree <= max_degree",
            _minimality_cases,
            _check_minimality,
            {"max_degree": 15},
        ),
        Suite(
            "order-drop",
            "g(T_p f) <= g(f) - 1 and the +-1 mod 8 parity rule on random forms",
            _order_drop_cases,
            _check_order_drop,
            {"max_p": 47, "samples": 200},
        ),
    )
}


def run_checks(
    check: Callable[[Case], Outcome], cases: list[Case], jobs: int = 1
) -> list[Outcome]:
    """Run `check` over `cases`, in a process pool when jobs > 1.

    Outcomes come back in case order whatever the pool does.
    """
    if jobs <= 1 or len(cases) <= 1:
        return [check(case) for case in cases]
    chunksize = max(1, len(cases) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(check, cases, chunksize=chunksize))


def run_suite(name: str, params: SuiteParams, jobs: int = 1) -> SuiteResult:
    """Run the named suite.

    Raises:
        KeyError: If no suite has that name
        ValueError: If a bound is not positive
    """
    suite = SUITES[name]
    params = params.with_defaults(suite.defaults)
    for bound in ("max_k", "max_p", "max_degree", "K", "samples"):
        value = getattr(params, bound)
        if value is not None and value < 1:
            raise ValueError(f"{bound} must be positive, got {value}")
    cases = suite.cases(params)
    logger.debug("suite %s: %d cases on %d job(s)", name, len(cases), jobs)
    result = SuiteResult(name)
    for checked, counterexample in run_checks(
        partial(suite.check, params), cases, jobs
    ):
        result.checked += checked
        if counterexample is not None and result.passed:
            result.passed = False
            result.counterexample = counterexample
    logger.debug("suite %s: %d checked, passed=%s", name, result.checked, result.passed)
    return result
