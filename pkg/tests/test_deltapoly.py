"""Tests for hecke2 deltapoly module."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke2.core.deltapoly import (
    DELTA,
    ZERO,
    DeltaPoly,
    OddForm,
    as_odd_form,
    dominant_exponent,
    from_series,
    grade_decompose,
    require_parabolic,
    to_series,
    two_power_decompose,
)
from hecke2.core.errors import NotAPolynomial, PreconditionError
from hecke2.core.f2series import F2Series, delta_pow, square

forms = st.frozensets(st.integers(min_value=1, max_value=80), max_size=8).map(
    DeltaPoly
)


class TestDeltaPoly:
    """Test cases for the DeltaPoly type."""

    def test_of_cancels_pairs(self):
        """Test duplicate exponents cancel."""
        assert DeltaPoly.of(3, 1, 3) == DeltaPoly.of(1)
        assert DeltaPoly.of(5, 5).is_zero()

    def test_negative_exponent_rejected(self):
        """Test exponents must be non-negative."""
        with pytest.raises(PreconditionError):
            DeltaPoly.of(-1)

    def test_mask_round_trip(self):
        """Test the bit mask view."""
        f = DeltaPoly.of(1, 4, 9)
        assert f.mask == 0b1000010010
        assert DeltaPoly.from_mask(f.mask) == f

    def test_degree(self):
        """Test degree and the zero convention."""
        assert DeltaPoly.of(2, 7).degree == 7
        assert ZERO.degree == -1

    def test_ordered_is_decreasing(self):
        """Test canonical order and iteration."""
        f = DeltaPoly.of(1, 7, 3)
        assert f.ordered() == [7, 3, 1]
        assert list(f) == [7, 3, 1]

    def test_parabolic(self):
        """Test constant terms are detected."""
        assert DeltaPoly.of(1).is_parabolic()
        assert not DeltaPoly.of(0, 1).is_parabolic()
        with pytest.raises(PreconditionError):
            require_parabolic(DeltaPoly.of(0))

    def test_add_and_mul(self):
        """Test addition is XOR and products cancel in pairs."""
        assert DeltaPoly.of(1, 3) + DeltaPoly.of(3, 5) == DeltaPoly.of(1, 5)
        assert DeltaPoly.of(1, 2) * DeltaPoly.of(1, 2) == DeltaPoly.of(2, 4)

    def test_frobenius(self):
        """Test squaring doubles exponents."""
        assert DeltaPoly.of(1, 3).frobenius() == DeltaPoly.of(2, 6)
        assert DeltaPoly.of(3).frobenius(3) == DeltaPoly.of(24)

    def test_odd_form_equals_delta_poly(self):
        """Test OddForm and DeltaPoly compare by exponents."""
        assert OddForm(frozenset({1})) == DeltaPoly.of(1)
        assert hash(DELTA) == hash(DeltaPoly.of(1))

    def test_odd_form_rejects_even(self):
        """Test OddForm refuses even exponents."""
        with pytest.raises(PreconditionError):
            OddForm(frozenset({1, 2}))
        with pytest.raises(PreconditionError):
            as_odd_form(DeltaPoly.of(4))


class TestSeriesConversion:
    """Test cases for to_series and from_series."""

    def test_to_series_delta(self):
        """Test Delta to precision 10."""
        assert to_series(DELTA, 10).support() == [1, 9]

    def test_to_series_zero(self):
        """Test the zero form."""
        assert to_series(ZERO, 5).is_zero()

    def test_to_series_cancellation(self):
        """Test q^9 cancels in Delta + Delta^9."""
        assert to_series(DeltaPoly.of(1, 9), 12).support() == [1]

    def test_from_series_delta_cubed(self):
        """Test Delta^3 is recovered."""
        assert from_series(delta_pow(3, 30), 5) == DeltaPoly.of(3)

    def test_from_series_needs_precision(self):
        """Test the precision must cover the degree bound."""
        with pytest.raises(PreconditionError):
            from_series(F2Series.zero(5), 5)

    def test_from_series_residual(self):
        """Test a series outside the span raises."""
        with pytest.raises(NotAPolynomial):
            from_series(F2Series.from_support([1, 3], 10), 1)

    @settings(max_examples=50, deadline=None)
    @given(forms)
    def test_round_trip(self, f):
        """Test from_series inverts to_series."""
        bound = max(f.degree, 0)
        assert from_series(to_series(f, bound + 1), bound) == f

    def test_round_trip_exhaustive(self):
        """Test every form with exponents in 0..16, constant term included."""
        for mask in range(1 << 17):
            f = DeltaPoly.from_mask(mask)
            bound = max(f.degree, 0)
            assert from_series(to_series(f, bound + 1), bound) == f

    def test_doubling_exponents_squares_series(self):
        """Test to_series of Delta^(2m) is the square of that of Delta^m."""
        for m in range(0, 90):
            assert to_series(DeltaPoly.of(2 * m), 400).agrees_with(
                square(to_series(DeltaPoly.of(m), 400))
            )

    @settings(max_examples=50, deadline=None)
    @given(forms)
    def test_frobenius_squares_series(self, f):
        """Test DeltaPoly.frobenius matches squaring the q-expansion."""
        assert to_series(f.frobenius(), 400).agrees_with(square(to_series(f, 400)))


class TestDecompositions:
    """Test cases for grading, 2-power splitting and domination."""

    def test_grade_decompose(self):
        """Test the split by exponent residue mod 8."""
        parts = grade_decompose(DeltaPoly.of(1, 3, 9, 15))
        assert parts[1] == DeltaPoly.of(1, 9)
        assert parts[3] == DeltaPoly.of(3)
        assert parts[5].is_zero()
        assert parts[7] == DeltaPoly.of(15)

    def test_two_power_decompose(self):
        """Test f = f_0 + f_1^2 + f_2^4."""
        parts = two_power_decompose(DeltaPoly.of(2, 3, 12))
        assert parts == [
            (0, DeltaPoly.of(3)),
            (1, DeltaPoly.of(1)),
            (2, DeltaPoly.of(3)),
        ]

    @settings(max_examples=50, deadline=None)
    @given(forms)
    def test_two_power_reassembles(self, f):
        """Test the parts add back up to f."""
        total = ZERO
        for s, part in two_power_decompose(f):
            assert part.is_odd_form()
            total = total + part.frobenius(s)
        assert total == f

    @settings(max_examples=50, deadline=None)
    @given(forms)
    def test_two_power_reassembles_series(self, f):
        """Test sum of to_series(f_s) squared s times gives to_series(f)."""
        prec = 400
        total = F2Series.zero(prec)
        for s, part in two_power_decompose(f):
            expansion = to_series(part, prec)
            for _ in range(s):
                expansion = square(expansion)
            total = total + expansion
        assert total.agrees_with(to_series(f, prec))
        assert total.prec == prec

    def test_dominant_exponent(self):
        """Test Delta^5 dominates Delta^3 and Delta."""
        assert dominant_exponent(DeltaPoly.of(5, 3, 1)) == 5
        assert dominant_exponent(DeltaPoly.of(9, 11)) == 11

    def test_dominant_exponent_of_zero(self):
        """Test the zero form has no dominant exponent."""
        with pytest.raises(PreconditionError):
            dominant_exponent(ZERO)
