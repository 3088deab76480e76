"""Exhaustions, parameter grids, and the limit-at-infinity estimator."""

import math

import numpy as np
import pytest

from sumkit.domains import (
    CONVERGED,
    DIVERGED,
    INCONCLUSIVE,
    NAT,
    UNIT_INTERVAL,
    HALF_LINE,
    HalfOpenInterval,
    estimate_limit_at_infinity,
    exhaustion,
    parameter_grid,
)
from sumkit.vspace import SCALAR, SpaceDescriptor, VectorValue, scalar_value


def test_exhaustion_examples():
    assert exhaustion(NAT, 3).hi == 3
    assert exhaustion(UNIT_INTERVAL, 0).hi == pytest.approx(0.5, abs=0)
    assert exhaustion(HALF_LINE, 4).hi == pytest.approx(16.0, abs=0)


def test_exhaustion_monotone_and_covering():
    for domain in (NAT, UNIT_INTERVAL, HalfOpenInterval(2.5), HALF_LINE):
        his = [exhaustion(domain, n).hi for n in range(31)]
        assert all(a < b for a, b in zip(his, his[1:]))
        if isinstance(domain, HalfOpenInterval) and not math.isinf(domain.right):
            assert all(h < domain.right for h in his)
            # windows eventually cover any point below the right end
            for t in (0.0, 0.9 * domain.right, 0.999 * domain.right):
                assert any(exhaustion(domain, n).contains(t) for n in range(31))
        else:
            reachable = (0, 5, 29) if domain is NAT else (0, 5, 2.0**29)
            for t in reachable:
                assert any(exhaustion(domain, n).contains(t) for n in range(31))


def test_parameter_grid_examples():
    assert parameter_grid(UNIT_INTERVAL, 3) == [0.5, 0.75, 0.875]
    assert parameter_grid(NAT, 2) == [2, 4]
    assert parameter_grid(UNIT_INTERVAL, 1) == [0.5]
    assert parameter_grid(HALF_LINE, 3) == [2.0, 4.0, 8.0]


def test_domain_usage_errors():
    with pytest.raises(ValueError):
        parameter_grid(NAT, 0)
    with pytest.raises(ValueError):
        exhaustion(NAT, -1)
    with pytest.raises(ValueError):
        HalfOpenInterval(0.0)


def test_estimator_constant_sequence():
    c = scalar_value(3 - 1j)
    est = estimate_limit_at_infinity([c] * 10, window=4, tol=1e-12)
    assert est.status == CONVERGED
    assert est.residual == 0.0
    assert est.value == c


def test_estimator_on_cesaro_means_of_alternating():
    # oracle: exact Cesàro means sigma_n of (-1)^k partial sums at n = 2^j
    def sigma(n):
        s = sum((1 + (-1) ** k) / 2 for k in range(n + 1))
        return s / (n + 1)

    samples = [scalar_value(sigma(2**j)) for j in range(1, 15)]
    est = estimate_limit_at_infinity(samples, window=4, tol=1e-3)
    assert est.status == CONVERGED
    assert abs(complex(est.value.coords[0]) - 0.5) < 1e-3


def test_estimator_raw_alternating_is_inconclusive():
    samples = [scalar_value((-1.0) ** n) for n in range(20)]
    est = estimate_limit_at_infinity(samples, window=4, tol=1e-3)
    assert est.status == INCONCLUSIVE
    assert est.residual == pytest.approx(2.0, abs=0)
    assert est.stalled


def test_estimator_divergence():
    samples = [scalar_value(float(2**n)) for n in range(12)]
    est = estimate_limit_at_infinity(samples, window=4, tol=1e-6)
    assert est.status == DIVERGED


def test_estimator_empty_is_usage_error():
    with pytest.raises(ValueError):
        estimate_limit_at_infinity([])


def test_estimator_idempotence_append_within_tol():
    rng = np.random.default_rng(3)
    space = SpaceDescriptor(3, "l2")
    base = VectorValue([1.0, -2.0, 0.5], space)
    tol = 1e-6
    samples = [base + (0.25**n) * VectorValue([1, 1, 1], space) for n in range(16)]
    est = estimate_limit_at_infinity(samples, window=4, tol=tol)
    assert est.status == CONVERGED
    for _ in range(20):
        bump = rng.uniform(-1, 1, 3) * tol / 4
        samples.append(est.value + VectorValue(bump, space))
        again = estimate_limit_at_infinity(samples, window=4, tol=tol)
        assert again.status != DIVERGED


@pytest.mark.parametrize("rho", [0.5, 0.9, -0.6, 0.3 + 0.8j])
def test_estimator_soundness_geometric_approach(rho):
    rng = np.random.default_rng(11)
    space = SpaceDescriptor(4, "l2")
    target = VectorValue(rng.standard_normal(4) + 1j * rng.standard_normal(4), space)
    u = VectorValue(rng.standard_normal(4), space)
    u = (1.0 / u.norm()) * u
    tol = 1e-6
    depth = 4
    # deep enough that the whole trailing window sits past the tol/4 threshold
    while abs(rho) ** (depth - 3) >= tol / 4:
        depth += 1
    samples = [target + (rho**k) * u for k in range(depth + 1)]
    est = estimate_limit_at_infinity(samples, window=4, tol=tol)
    assert est.status == CONVERGED
    assert (est.value - target).norm() <= tol
