"""Transform engines: worked examples, oracles, and cross-engine consistency."""

import math

import numpy as np
import pytest

from sumkit.domains import CONVERGED, DIVERGED, parameter_grid, UNIT_INTERVAL
from sumkit.integrate import QuadratureConfig
from sumkit.methods import (
    NonSummableError,
    TruncationPolicy,
    abel_method,
    as_kernel,
    cesaro_method,
    combine_sources,
    identity_method,
    kernel_transform,
    logarithmic_method,
    matrix_transform,
    scalar_function,
    scalar_sequence,
    seq2func_transform,
    series_summation_method,
    summability_limit,
    vector_sequence,
)
from sumkit.vspace import SCALAR, SpaceDescriptor, VectorValue

ALT = scalar_sequence(lambda n: (-1.0) ** n, "alternating")
# partial sums of 1 - 1 + 1 - ... , the classical test series
ALT_PARTIAL = scalar_sequence(lambda n: (1.0 + (-1.0) ** n) / 2.0, "alt_partial_sums")


def _scalar(v: VectorValue) -> complex:
    return complex(v.coords[0])


# ---------------------------------------------------------------------------
# matrix engine


def test_cesaro_row_on_alternating():
    assert _scalar(matrix_transform(cesaro_method(), ALT, 3)) == 0.0


def test_identity_row_picks_term():
    v = scalar_sequence(lambda n: n * 1.0 + 1j, "n")
    assert _scalar(matrix_transform(identity_method(), v, 5)) == 5 + 1j


def test_series_summation_geometric():
    v = scalar_sequence(lambda n: 2.0 ** (-n.astype(float)), "2^-n")
    assert _scalar(matrix_transform(series_summation_method(), v, 3)) == pytest.approx(15 / 8, abs=0)


def test_cesaro_row_sums_exactly_one_on_canonical_grid():
    # exact float identity on the grids the toolkit exercises (m = 2^k, small m)
    spec = cesaro_method()
    for m in list(range(0, 33)) + [2**k for k in range(1, 15)]:
        entries = spec.coeff_block(m, 0, m + 1)
        assert math.fsum(entries.real) == 1.0
        assert math.fsum(entries.imag) == 0.0


# ---------------------------------------------------------------------------
# sequence-to-function engine


def test_abel_of_ones_is_one():
    ones = scalar_sequence(lambda n: np.ones_like(n, dtype=float), "ones")
    val = _scalar(seq2func_transform(abel_method(), ones, 0.5))
    assert val == pytest.approx(1.0, abs=1e-13)


def test_abel_alternating_matches_closed_form_and_oracle():
    # closed form (1-r)/(1+r); oracle: brute-force partial sums
    r = 0.5
    val = _scalar(seq2func_transform(abel_method(), ALT, r))
    brute = sum((1 - r) * r**n * (-1.0) ** n for n in range(200))
    assert val == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert val == pytest.approx(brute, abs=1e-12)


def test_abel_alternating_ramp_matches_closed_form():
    # sum (n+1) x^n = (1-x)^-2 at x = -r gives (1-r)/(1+r)^2
    v = scalar_sequence(lambda n: (-1.0) ** n * (n + 1.0), "alt_ramp")
    r = 0.5
    val = _scalar(seq2func_transform(abel_method(), v, r))
    brute = sum((1 - r) * r**n * (-1.0) ** n * (n + 1) for n in range(300))
    assert val == pytest.approx((1 - r) / (1 + r) ** 2, abs=1e-12)
    assert val == pytest.approx(brute, abs=1e-12)
    assert val == pytest.approx(2.0 / 9.0, abs=1e-12)


def test_abel_out_of_range_parameter():
    with pytest.raises(ValueError):
        seq2func_transform(abel_method(), ALT, 1.0)


def test_nonsummable_growing_sequence():
    with np.errstate(over="ignore"):
        v = scalar_sequence(lambda n: 2.0 ** np.minimum(n, 2000).astype(float), "2^n")
        with pytest.raises(NonSummableError) as err:
            seq2func_transform(abel_method(), v, 0.9)
    assert err.value.terms > 0


# ---------------------------------------------------------------------------
# kernel engine


def test_log_kernel_of_constant_is_one():
    one = scalar_function(lambda t: np.ones_like(t), name="one")
    for r in (0.25, 0.5, 1 - math.exp(-1), 0.9):
        val = _scalar(kernel_transform(logarithmic_method(), one, r))
        assert val == pytest.approx(1.0, abs=1e-12)


def test_log_kernel_linear_function_analytic():
    # v(t) = 1 - t: value -r/log(1-r); at r = 1 - 1/e this is 1 - 1/e
    v = scalar_function(lambda t: 1.0 - t, name="1-t")
    r = 1.0 - math.exp(-1.0)
    val = _scalar(kernel_transform(logarithmic_method(), v, r))
    assert val == pytest.approx(r, abs=1e-11)
    assert val == pytest.approx(0.6321205588285577, abs=1e-10)


def test_log_kernel_constant_vector():
    space = SpaceDescriptor(3, "l2")
    x = np.array([2.0, -1.0, 0.5j])

    def batch(ts):
        return np.ones((len(ts), 1)) * x[None, :]

    from sumkit.methods import FunctionSource

    src = FunctionSource(space=space, batch=batch)
    val = kernel_transform(logarithmic_method(), src, 0.7)
    assert np.allclose(val.coords, x, atol=1e-12)


# ---------------------------------------------------------------------------
# engine-level properties


def test_linearity_all_engines():
    rng = np.random.default_rng(29)
    a, b = complex(rng.standard_normal()), complex(rng.standard_normal())
    u = scalar_sequence(lambda n: 1.0 / (n + 1.0), "u")
    v = scalar_sequence(lambda n: (-1.0) ** n * 0.5**n, "v")
    w = combine_sources(a, u, b, v)

    for spec, param in [(cesaro_method(), 37), (series_summation_method(), 12),
                        (abel_method(), 0.7)]:
        from sumkit.methods import transform_at

        lhs = transform_at(spec, w, param)
        rhs = a * transform_at(spec, u, param) + b * transform_at(spec, v, param)
        assert (lhs - rhs).norm() <= 1e-10 * (1 + lhs.norm())

    fu = scalar_function(lambda t: np.cos(3 * t), name="cos")
    fv = scalar_function(lambda t: 1.0 / (2.0 - t), name="rational")
    fw = combine_sources(a, fu, b, fv)
    spec = logarithmic_method()
    lhs = kernel_transform(spec, fw, 0.8)
    rhs = a * kernel_transform(spec, fu, 0.8) + b * kernel_transform(spec, fv, 0.8)
    assert (lhs - rhs).norm() <= 1e-10 * (1 + lhs.norm())


def test_matrix_recast_as_counting_kernel_identical():
    v = scalar_sequence(lambda n: np.cos(n.astype(float)) * 0.9 ** n.astype(float), "damped")
    for spec in (cesaro_method(), series_summation_method(), identity_method()):
        kern = as_kernel(spec)
        for m in (3, 8, 33):
            direct = matrix_transform(spec, v, m)
            via_kernel = kernel_transform(kern, v, m)
            assert (direct - via_kernel).norm() <= 1e-12


def test_abel_as_kernel_consistency():
    spec = abel_method()
    kern = as_kernel(spec)
    for r in (0.3, 0.6, 0.9):
        direct = seq2func_transform(spec, ALT, r)
        via_kernel = kernel_transform(kern, ALT, r)
        assert (direct - via_kernel).norm() <= 1e-13


# ---------------------------------------------------------------------------
# summability limits


def test_cesaro_limit_of_alternating_series():
    # oracle: exact sigma_n evaluation, see test_domains; limit is 1/2
    est = summability_limit(cesaro_method(), ALT_PARTIAL, depth=14, tol=1e-3)
    assert est.status == CONVERGED
    assert abs(_scalar(est.value) - 0.5) <= 1e-3


def test_abel_limit_of_convergent_sequence():
    # v_n = 1 + 2^-n is convergent to 1; Abel means have the closed form
    # (1-r)(1/(1-r) + 1/(1 - r/2)) -> 1
    v = scalar_sequence(lambda n: 1.0 + 2.0 ** (-n.astype(float)), "1+2^-n")
    est = summability_limit(abel_method(), v, depth=20, tol=1e-4)
    assert est.status == CONVERGED
    assert abs(_scalar(est.value) - 1.0) <= 1e-4
    r = 1 - 2.0**-20
    closed = (1 - r) * (1 / (1 - r) + 1 / (1 - r / 2))
    assert abs(_scalar(est.value) - closed) <= 1e-9


def test_series_summation_of_ones_diverges():
    ones = scalar_sequence(lambda n: np.ones_like(n, dtype=float), "ones")
    est = summability_limit(series_summation_method(), ones, depth=14, tol=1e-6)
    assert est.status == DIVERGED


def test_identity_limit_is_plain_convergence():
    v = scalar_sequence(lambda n: (-1.0) ** n, "alternating")
    est = summability_limit(identity_method(), v, depth=10, tol=1e-3)
    assert est.status != CONVERGED  # parity pairs expose the oscillation


def test_failed_grid_points_are_recorded():
    # terms explode for n > 60: transform fails at large rows only
    def block(lo, hi):
        ns = np.arange(lo, hi, dtype=float)
        return np.where(ns < 60, 1.0, 1e160) ** np.where(ns < 60, 1.0, (ns - 59)) \
            .astype(float)[:, None] * np.ones((hi - lo, 1))

    bad = scalar_sequence(lambda n: np.where(n < 60, 1.0, np.inf), "explodes")
    est = summability_limit(cesaro_method(), bad, depth=8, tol=1e-6)
    assert est.failed_points  # rows beyond 60 hit non-finite terms
    assert est.status != CONVERGED


def test_vector_sequence_roundtrip():
    space = SpaceDescriptor(3, "sup")
    v = vector_sequence(lambda ns: np.stack([ns, ns**2, np.ones_like(ns)], axis=1).astype(complex),
                        space, "poly")
    t2 = v.term(2)
    assert t2 == VectorValue([2, 4, 1], space)
    est = matrix_transform(identity_method(), v, 7)
    assert est == VectorValue([7, 49, 1], space)
