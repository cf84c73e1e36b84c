"""Tests for hecke2 nilpotence module."""

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke2.core.deltapoly import DELTA, ZERO, DeltaPoly
from hecke2.core.errors import PreconditionError
from hecke2.core.hecke import hecke_direct
from hecke2.core.nilpotence import (
    Code,
    brute_force_order,
    check_code_shift,
    check_corollary_pm1,
    check_h_decrease,
    check_order_drop,
    check_parity_pm1,
    code_of,
    code_to_even,
    code_to_odd,
    dominates,
    domination_sorted,
    g_of,
    h_of_form,
    height,
    height_bounds_check,
    kernel_scan,
    nilpotence_order,
    order_bound_check,
    witness_check,
)
from hecke2.core.utils import NEG_INF, first_odd_primes

codes = st.builds(
    Code, st.integers(min_value=0, max_value=1 << 40), st.integers(0, 1 << 40)
)


class TestCode:
    """Test cases for codes and heights."""

    def test_code_of_one(self):
        """Test k = 1 has code [0, 0]."""
        assert code_of(1) == Code(0, 0)

    def test_code_of_seven(self):
        """Test k = 7 has code [1, 1] and height 2."""
        assert code_of(7) == Code(1, 1)
        assert code_of(7).h == 2

    def test_code_of_twenty_one(self):
        """Test 21 = 10101b: beta_2 = beta_4 = 1 gives [0, 3]."""
        assert code_of(21) == Code(0, 3)
        assert height(21) == 3

    def test_code_of_nine_and_eleven(self):
        """Test 9 = 1001b and 11 = 1011b."""
        assert code_of(9) == Code(2, 0)
        assert code_of(11) == Code(3, 0)

    def test_code_of_negative(self):
        """Test negative integers are refused."""
        with pytest.raises(PreconditionError):
            code_of(-1)

    def test_code_to_odd(self):
        """Test the inverse on small codes."""
        assert code_to_odd(Code(0, 0)) == 1
        assert code_to_odd(Code(1, 1)) == 7
        assert code_to_odd(Code(1, 0)) == 3

    def test_odd_bijection(self):
        """Test code_of and code_to_odd are inverse on odd k < 2^20."""
        for k in range(1, 1 << 20, 2):
            assert code_to_odd(code_of(k)) == k

    def test_even_bijection(self):
        """Test code_to_even inverts code_of on even integers."""
        for k in range(0, 1 << 12, 2):
            assert code_to_even(code_of(k)) == k

    def test_parity_stability(self):
        """Test code_of(2l + 1) = code_of(2l)."""
        for ell in range(2000):
            assert code_of(2 * ell + 1) == code_of(2 * ell)

    @settings(max_examples=100, deadline=None)
    @given(codes)
    def test_large_codes_round_trip(self, code):
        """Test the bijection beyond a single 64-bit chunk."""
        assert code_of(code_to_odd(code)) == code

    def test_as_list(self):
        """Test the JSON form of a code."""
        assert Code(2, 5).as_list() == [2, 5]


class TestDomination:
    """Test cases for the domination order."""

    def test_five_dominates_three(self):
        """Test equal heights fall back to n5."""
        assert dominates(3, 5) == -1
        assert dominates(5, 3) == 1

    def test_nine_dominates_one(self):
        """Test the larger height dominates."""
        assert dominates(1, 9) == -1

    def test_reflexive(self):
        """Test k compares equal to itself."""
        assert dominates(13, 13) == 0

    def test_mixed_parity(self):
        """Test integers of different parity are not compared."""
        with pytest.raises(PreconditionError):
            dominates(2, 3)

    def test_total_order(self):
        """Test antisymmetry, totality and transitivity on odd k <= 2^9."""
        ks = range(1, 1 << 9, 2)
        for k in ks:
            for ell in ks:
                c = dominates(k, ell)
                assert c == -dominates(ell, k)
                assert (c == 0) == (k == ell)
        ordered = sorted(ks, key=lambda k: (code_of(k).h, code_of(k).n5))
        for a, b in zip(ordered, ordered[1:]):
            assert dominates(a, b) == -1

    def test_domination_sorted(self):
        """Test exponents come out dominant first."""
        assert domination_sorted(DeltaPoly.of(1, 3, 5, 9)) == [9, 5, 3, 1]


class TestNilpotenceOrder:
    """Test cases for h(f), g(f) and the report."""

    def test_heights_of_forms(self):
        """Test h of small odd forms."""
        assert h_of_form(DELTA) == 0
        assert h_of_form(DeltaPoly.of(7)) == 2
        assert h_of_form(DeltaPoly.of(5, 3, 1)) == 1
        assert h_of_form(ZERO) == NEG_INF

    def test_order_of_delta(self):
        """Test g(Delta) = 1 with an empty witness."""
        report = nilpotence_order(DELTA)
        assert report.g == 1
        assert report.witness == []

    def test_order_of_small_forms(self):
        """Test g(Delta^3 + Delta) = g(Delta^5 + Delta^3 + Delta) = 2."""
        assert g_of(DeltaPoly.of(3, 1)) == 2
        assert g_of(DeltaPoly.of(5, 3, 1)) == 2

    def test_report_json(self):
        """Test the report for Delta^7."""
        report = nilpotence_order(DeltaPoly.of(7))
        assert report.to_json() == '{"g":3,"dominant":7,"code":[1,1],"witness":[3,5]}'

    def test_zero_report(self):
        """Test the zero form reports -inf."""
        data = nilpotence_order(ZERO).to_dict()
        assert data["g"] == "-inf"
        assert data["dominant"] is None
        assert data["witness"] == []

    def test_derived_report(self):
        """Test a form outside the odd span takes the max over its parts."""
        report = nilpotence_order(DeltaPoly.of(2, 28))
        data = json.loads(report.to_json())
        assert data["g"] == 3
        assert data["dominant"] == 7
        assert data["derived"] is True
        assert data["frobenius_power"] == 2

    def test_rejects_constant_term(self):
        """Test forms with a constant term are refused."""
        with pytest.raises(PreconditionError):
            nilpotence_order(DeltaPoly.of(0, 3))


class TestStatementChecks:
    """Test cases for the witness, height and corollary checks."""

    def test_witness_examples(self):
        """Test witness chains for Delta, Delta^7 and Delta^21."""
        assert witness_check(DELTA)
        assert witness_check(DeltaPoly.of(7))
        assert witness_check(DeltaPoly.of(21))

    def test_witness_rejects_zero(self):
        """Test the zero form has no witness."""
        with pytest.raises(PreconditionError):
            witness_check(ZERO)

    def test_h_decrease_examples(self):
        """Test h drops under T_3, T_11 and T_23."""
        assert check_h_decrease(DELTA, 3)
        assert check_h_decrease(DeltaPoly.of(3), 11)
        assert check_h_decrease(DeltaPoly.of(7), 23)

    def test_code_shift_examples(self):
        """Test T_3 Delta^3, T_5 Delta^7 and T_3 Delta^11."""
        assert check_code_shift(DeltaPoly.of(3), 3)
        assert check_code_shift(DeltaPoly.of(7), 5)
        assert check_code_shift(DeltaPoly.of(11), 3)
        image = hecke_direct(3, DeltaPoly.of(11))
        assert domination_sorted(image)[0] == 9

    def test_code_shift_preconditions(self):
        """Test unmet preconditions are reported as errors."""
        with pytest.raises(PreconditionError):
            check_code_shift(DeltaPoly.of(5), 3)
        with pytest.raises(PreconditionError):
            check_code_shift(DeltaPoly.of(3), 5)
        with pytest.raises(PreconditionError):
            check_code_shift(DeltaPoly.of(7), 7)

    def test_corollary_examples(self):
        """Test g drops by at least two for p = 31, 23, 17."""
        assert check_corollary_pm1(DeltaPoly.of(7), 31)
        assert check_corollary_pm1(DeltaPoly.of(7), 23)
        assert check_corollary_pm1(DeltaPoly.of(9), 17)

    def test_corollary_rejects_other_residues(self):
        """Test p must be +-1 mod 8."""
        with pytest.raises(PreconditionError):
            check_corollary_pm1(DeltaPoly.of(7), 3)
        with pytest.raises(PreconditionError):
            check_parity_pm1(DeltaPoly.of(7), 13)

    @pytest.mark.parametrize("p", [7, 17, 23, 31, 41, 47])
    def test_corollary_random(self, p):
        """Test g(T_p f) <= g(f) - 2 on random odd forms."""
        rng = random.Random(p)
        for _ in range(15):
            exponents = [m for m in range(1, 200, 2) if rng.getrandbits(1)] or [1]
            f = DeltaPoly(frozenset(exponents))
            assert check_corollary_pm1(f, p)
            assert check_parity_pm1(f, p)

    def test_order_drop(self):
        """Test g(T_p f) <= g(f) - 1 for the first ten odd primes."""
        for p in first_odd_primes(10):
            for k in range(1, 120, 2):
                assert check_order_drop(DeltaPoly.of(k), p)

    @pytest.mark.parametrize("k", range(1, 200, 2))
    def test_theorem_on_powers(self, k):
        """Test the witness reaches Delta and h drops for the first 15 primes."""
        f = DeltaPoly.of(k)
        assert witness_check(f)
        for p in first_odd_primes(15):
            assert check_h_decrease(f, p)

    @pytest.mark.parametrize("k", range(1, 1000, 2))
    def test_code_shift_on_powers(self, k):
        """Test the code shift for every odd k < 1000 where it applies."""
        code = code_of(k)
        if code.n3:
            assert check_code_shift(DeltaPoly.of(k), 3)
        if code.n5:
            assert check_code_shift(DeltaPoly.of(k), 5)

    @pytest.mark.slow
    def test_theorem_on_powers_to_999(self):
        """Test the witness and height checks for every odd k <= 999."""
        primes = first_odd_primes(15)
        for k in range(1, 1000, 2):
            f = DeltaPoly.of(k)
            assert witness_check(f)
            assert all(check_h_decrease(f, p) for p in primes)


class TestKernelAndSearch:
    """Test cases for the kernel scan and the exhaustive order search."""

    @pytest.mark.parametrize("max_degree", [1, 7, 15])
    def test_kernel_small(self, max_degree):
        """Test only Delta is killed by both T_3 and T_5."""
        assert kernel_scan(max_degree) == [DELTA]

    def test_kernel_to_25(self):
        """Test the scan over all 2^13 - 1 forms up to degree 25."""
        assert kernel_scan(25) == [DELTA]

    def test_brute_force_delta_seven(self):
        """Test the search over T_3 and T_5 finds g(Delta^7) = 3."""
        assert brute_force_order(DeltaPoly.of(7), [3, 5]) == 3

    def test_brute_force_zero(self):
        """Test the zero form reports -inf."""
        assert brute_force_order(ZERO, [3]) == NEG_INF

    def test_brute_force_needs_primes(self):
        """Test an empty prime set is refused."""
        with pytest.raises(PreconditionError):
            brute_force_order(DELTA, [])

    def test_brute_force_matches_closed_form(self):
        """Test the search over seven primes equals h + 1 up to degree 11."""
        primes = first_odd_primes(7)
        exponents = list(range(1, 12, 2))
        for subset in range(1, 1 << len(exponents)):
            f = DeltaPoly(
                frozenset(m for i, m in enumerate(exponents) if subset >> i & 1)
            )
            assert brute_force_order(f, primes) == g_of(f)


class TestBounds:
    """Test cases for the height bounds."""

    def test_bounds_small(self):
        """Test both bounds for odd k < 10^5."""
        for k in range(1, 100_000, 2):
            assert height_bounds_check(k)
            assert order_bound_check(k)

    @pytest.mark.slow
    def test_bounds_to_a_million(self):
        """Test both bounds for odd k <= 10^6."""
        for k in range(1, 1_000_001, 2):
            assert height_bounds_check(k)
            assert order_bound_check(k)
