"""Tests for hecke2 suites module."""

from functools import partial

import pytest

from hecke2.core.suites import (
    SUITES,
    SuiteParams,
    _check_examples,
    _check_h_bounds,
    _expected_power_image,
    run_checks,
    run_suite,
)

SMALL_BOUNDS = {
    "examples": SuiteParams(max_p=40),
    "fp-structure": SuiteParams(max_p=11),
    "recurrence": SuiteParams(max_p=7, max_k=61),
    "theorem5": SuiteParams(max_k=63, witness_prime_count=6),
    "code-shift": SuiteParams(max_k=127),
    "corollaries": SuiteParams(samples=3),
    "kernel": SuiteParams(max_degree=11),
    "h-bounds": SuiteParams(max_k=20_001),
    "grading": SuiteParams(max_p=23, samples=20),
    "genfun": SuiteParams(K=40),
    "minimality": SuiteParams(max_degree=7, witness_prime_count=5),
    "order-drop": SuiteParams(max_p=19, samples=20),
}


class TestSuites:
    """Test cases for the verification suites."""

    def test_every_suite_has_small_bounds(self):
        """Test the table below covers all registered suites."""
        assert set(SMALL_BOUNDS) == set(SUITES)

    @pytest.mark.parametrize("name", sorted(SMALL_BOUNDS))
    def test_suite_passes(self, name):
        """Test each suite passes on small bounds."""
        result = run_suite(name, SMALL_BOUNDS[name])
        assert result.passed, result.counterexample
        assert result.checked > 0

    def test_examples_bound_is_inclusive(self):
        """Test --max-p includes the bound itself, as in the other suites."""
        assert run_suite("examples", SuiteParams(max_p=11)).checked == 16
        assert run_suite("examples", SuiteParams(max_p=3)).checked == 4
        assert run_suite("examples", SuiteParams(max_p=10)).checked == 12

    def test_fixed_checks_ignore_bounds(self):
        """Test checks without tunable bounds give the same outcome for any bounds."""
        assert _check_examples(SuiteParams(), 11) == (4, None)
        assert _check_examples(SuiteParams(max_p=3, samples=1), 11) == (4, None)

    def test_kernel_counts_forms(self):
        """Test the kernel suite counts every candidate form."""
        result = run_suite("kernel", SuiteParams(max_degree=7))
        assert result.checked == 15

    def test_defaults_fill_missing_bounds(self):
        """Test a suite's own defaults apply when bounds are not given."""
        params = SuiteParams(max_k=5).with_defaults({"max_k": 999, "max_p": 31})
        assert params.max_k == 5
        assert params.max_p == 31

    def test_unknown_suite(self):
        """Test an unknown name raises KeyError."""
        with pytest.raises(KeyError):
            run_suite("nonexistent", SuiteParams())

    def test_nonpositive_bound(self):
        """Test bounds must be positive."""
        with pytest.raises(ValueError):
            run_suite("theorem5", SuiteParams(max_k=0))

    def test_expected_images(self):
        """Test the residue table for Delta^7."""
        assert _expected_power_image(31, 7).is_zero()
        assert _expected_power_image(23, 7).ordered() == [1]
        assert _expected_power_image(11, 7).ordered() == [5]
        assert _expected_power_image(13, 7).ordered() == [3]
        assert _expected_power_image(17, 7).is_zero()

    def test_pool_matches_serial(self):
        """Test outcomes keep case order in a worker pool."""
        check = partial(_check_h_bounds, SuiteParams())
        cases = [(1, 101), (101, 301), (301, 1001)]
        assert run_checks(check, cases, jobs=2) == run_checks(check, cases, jobs=1)

    def test_seed_makes_runs_repeatable(self):
        """Test random suites report the same counts for the same seed."""
        first = run_suite("grading", SuiteParams(max_p=13, samples=5, seed=3))
        second = run_suite("grading", SuiteParams(max_p=13, samples=5, seed=3))
        assert first == second

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name", ["theorem5", "code-shift", "corollaries", "kernel", "h-bounds"]
    )
    def test_suite_defaults(self, name):
        """Test the full default bounds."""
        assert run_suite(name, SuiteParams(), jobs=4).passed
