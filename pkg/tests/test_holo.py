"""Taylor functions: partial sums, dilates, logarithmic means, norms."""

import math

import numpy as np
import pytest

from sumkit.holo import (
    ABEL_DILATE,
    CONVERGED_TO_ZERO,
    LOG_MEAN,
    PARTIAL_SUMS,
    SeriesSpace,
    DilateConsistencyError,
    NonSummableError,
    abel_dilate,
    series_norm,
    dilate_dual_deviation,
    geometric_taylor,
    log_mean_multiplier,
    log_taylor_mean,
    monomial_taylor,
    partial_sum,
    power_taylor,
    taylor_from_coefficients,
    taylor_sub,
    taylor_summability_experiment,
)
from sumkit.methods import TruncationPolicy

H2 = SeriesSpace("h2")
WIENER = SeriesSpace("wiener")
DISK = SeriesSpace("disk_grid")


# ---------------------------------------------------------------------------
# partial sums


def test_partial_sum_of_low_degree_polynomial_unchanged():
    p = taylor_from_coefficients([1, 2, 3, 4], H2)
    s = partial_sum(p, 5)
    assert np.array_equal(s.coeff_array(6), p.coeff_array(6))


def test_partial_sum_truncates_geometric():
    f = geometric_taylor(1.0, 0.5, H2)
    s = partial_sum(f, 1)
    assert np.allclose(s.coeff_array(4), [1.0, 0.5, 0.0, 0.0, 0.0])


def test_partial_sum_zero_keeps_constant_only():
    p = taylor_from_coefficients([7, 8, 9], H2)
    assert np.array_equal(partial_sum(p, 0).coeff_array(2), [7, 0, 0])


def test_partial_sum_is_projection_exactly():
    f = geometric_taylor(2.0, 0.7, H2)
    once = partial_sum(f, 6)
    twice = partial_sum(once, 6)
    assert np.array_equal(once.coeff_array(10), twice.coeff_array(10))


# ---------------------------------------------------------------------------
# dilates


def test_dilate_at_zero_keeps_constant_term():
    p = taylor_from_coefficients([3, 1, 4, 1, 5], H2)
    d = abel_dilate(p, 0.0)
    assert np.array_equal(d.coeff_array(4), [3, 0, 0, 0, 0])


def test_dilate_flat_coefficients():
    p = taylor_from_coefficients([1, 1, 1], H2)
    d = abel_dilate(p, 0.5)
    assert np.allclose(d.coeff_array(2), [1.0, 0.5, 0.25], atol=1e-14)


def test_dilate_of_monomial_has_norm_r_to_k():
    for k in (0, 3, 7):
        for r in (0.25, 0.9):
            d = abel_dilate(monomial_taylor(k, H2), r)
            assert series_norm(d) == pytest.approx(r**k, rel=1e-12)


def test_dilate_dual_forms_agree_on_random_polynomials():
    rng = np.random.default_rng(64)
    for _ in range(20):
        deg = int(rng.integers(0, 65))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        f = taylor_from_coefficients(coeffs, H2)
        for r in (0.25, 0.5, 0.9):
            assert dilate_dual_deviation(f, r) <= 1e-12
            abel_dilate(f, r)  # consistency check runs internally


def test_dilate_contractive_in_h2():
    rng = np.random.default_rng(11)
    for _ in range(20):
        coeffs = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        f = taylor_from_coefficients(coeffs, H2)
        for r in (0.3, 0.8, 0.99):
            assert series_norm(abel_dilate(f, r, verify=False)) <= series_norm(f) * (1 + 1e-12)


# ---------------------------------------------------------------------------
# logarithmic means


def test_log_multiplier_zero_is_exactly_one():
    assert log_mean_multiplier(0, 0.3) == 1.0
    assert log_mean_multiplier(0, 0.999999) == 1.0


def test_log_multiplier_one_analytic():
    # lambda_1(r) = 1 + r/log(1-r); at r = 1 - 1/e it equals 1/e
    r = 1.0 - math.exp(-1.0)
    assert log_mean_multiplier(1, r) == pytest.approx(math.exp(-1.0), abs=1e-11)
    for r in (0.3, 0.7, 0.95):
        expected = 1.0 + r / math.log1p(-r)
        assert log_mean_multiplier(1, r) == pytest.approx(expected, abs=1e-11)


def test_log_multipliers_in_unit_interval_and_monotone_to_one():
    rs = [1.0 - 2.0**-j for j in range(1, 21)]
    for k in range(0, 33, 4):
        values = [log_mean_multiplier(k, r) for r in rs]
        assert all(-1e-12 <= v <= 1.0 + 1e-12 for v in values)
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] > values[0] or k == 0


def test_log_mean_keeps_constants():
    p = taylor_from_coefficients([5.0], H2)
    m = log_taylor_mean(p, 0.7)
    assert m.coeff(0) == 5.0


# ---------------------------------------------------------------------------
# norms


def test_monomial_norm_one_in_h2_and_wiener():
    for k in (0, 1, 5, 31):
        assert series_norm(monomial_taylor(k, H2)) == 1.0
        assert series_norm(monomial_taylor(k, WIENER)) == 1.0
        assert series_norm(monomial_taylor(k, DISK)) == pytest.approx(1.0, rel=1e-12)


def test_geometric_norms_closed_form():
    f = geometric_taylor(1.0, 0.5, H2)
    assert series_norm(f) == pytest.approx(math.sqrt(4.0 / 3.0), rel=1e-12)
    assert series_norm(f.in_space(WIENER)) == pytest.approx(2.0, rel=1e-12)
    # boundary max of sum (z/2)^k is at z = 1: value 2
    assert series_norm(f.in_space(DISK)) == pytest.approx(2.0, rel=1e-9)


def test_power_law_norm_certificate_failure():
    f = power_taylor(1.0, 1.01, WIENER)
    tight = TruncationPolicy(tail_tol=1e-12, max_terms=10_000)
    with pytest.raises(NonSummableError):
        series_norm(f, tight)


def test_disk_grid_is_max_modulus_on_grid():
    # f(z) = z^2 + 1: max over |z| = 1 is 2 (attained at z = +/- 1)
    f = taylor_from_coefficients([1, 0, 1], DISK)
    assert series_norm(f) == pytest.approx(2.0, rel=1e-10)


# ---------------------------------------------------------------------------
# experiments


def test_partial_sum_distance_closed_form():
    f = geometric_taylor(1.0, 0.5, H2)
    for n in range(31):
        d = series_norm(taylor_sub(partial_sum(f, n), f))
        assert d == pytest.approx(2.0**-n / math.sqrt(3.0), abs=1e-10)


def test_abel_dilate_chain_converges_in_h2():
    f = geometric_taylor(1.0, 0.5, H2)
    report = taylor_summability_experiment(f, H2, [ABEL_DILATE], depth=20, tol=1e-4)
    assert report.status == CONVERGED_TO_ZERO
    assert report.route == "tol"
    assert report.residual <= 1e-4


def test_log_mean_chain_converges_by_decay_trend():
    f = geometric_taylor(1.0, 0.5, H2)
    report = taylor_summability_experiment(f, H2, [LOG_MEAN], depth=20, tol=1e-4)
    assert report.status == CONVERGED_TO_ZERO
    assert report.route == "decay-trend"
    distances = [d for _, d in report.cells]
    assert all(b <= a for a, b in zip(distances, distances[1:]))


def test_partial_sum_chain_on_polynomial_hits_zero():
    p = taylor_from_coefficients([1, 2, 3, 4, 5], H2)
    report = taylor_summability_experiment(p, H2, [PARTIAL_SUMS], depth=10, tol=1e-8)
    assert report.status == CONVERGED_TO_ZERO
    assert report.residual == 0.0


def test_composed_chain_dilate_then_log_mean():
    f = geometric_taylor(1.0, 0.5, H2)
    report = taylor_summability_experiment(f, H2, [ABEL_DILATE, LOG_MEAN], depth=16, tol=1e-3)
    assert report.status == CONVERGED_TO_ZERO


def test_mixed_chain_rejected():
    f = geometric_taylor(1.0, 0.5, H2)
    with pytest.raises(ValueError):
        taylor_summability_experiment(f, H2, [PARTIAL_SUMS, ABEL_DILATE], depth=6)


def test_experiment_in_disk_grid_carries_approximation_note():
    p = taylor_from_coefficients([1, 1], DISK)
    report = taylor_summability_experiment(p, DISK, [ABEL_DILATE], depth=12, tol=1e-3)
    assert report.notes and "underestimates" in report.notes[0]


def test_declared_decay_honored_spot_check():
    f = geometric_taylor(2.0, 0.6, H2)
    for k in (0, 3, 11, 40):
        assert abs(f.coeff(k)) <= f.decay.coeff_bound(k) * (1 + 1e-12)
    g = power_taylor(1.5, 2.0, H2)
    for k in (0, 7, 100):
        assert abs(g.coeff(k)) <= g.decay.coeff_bound(k) * (1 + 1e-12)
