"""Taylor-series summability in coefficient-normed spaces of power series.

A power series f(z) = sum a_k z^k is represented lazily by its coefficient
function together with a declared decay class (finitely supported, geometric,
or power law) that certifies truncation tails.  Three norms are implemented:

* h2        -- l2 norm of the coefficients;
* wiener    -- l1 norm of the coefficients;
* disk_grid -- max modulus over a boundary grid.  This approximates the true
               sup norm from below; the dropped coefficient tail bounds the
               additional error, and reports carry that bound.

The radial dilate multiplies coefficient k by r^k; it is computed both as the
literal weighted sum of partial sums and through that multiplier, and the two
must agree coefficientwise (an internal consistency check).  The logarithmic
mean applies the multiplier (-1/log(1-r)) * integral_0^r t^k/(1-t) dt, with
the k = 0 multiplier equal to 1 exactly.

Monomials have norm one in h2 and wiener, so the k-th root of ||z^k|| stays
bounded by one and the dilate is a bounded operator on all built-in spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .domains import NAT, UNIT_INTERVAL, parameter_grid
from .integrate import QuadratureConfig, SUBSTITUTION_NONE, _adaptive
from .methods import DEFAULT_TRUNCATION, NonSummableError, TruncationPolicy

H2 = "h2"
WIENER = "wiener"
DISK_GRID = "disk_grid"

_SPACE_TAGS = (H2, WIENER, DISK_GRID)


class DilateConsistencyError(RuntimeError):
    """Multiplier and double-sum forms of the dilate disagreed."""


@dataclass(frozen=True)
class SeriesSpace:
    tag: str = H2
    boundary_points: int = 4096

    def __post_init__(self):
        if self.tag not in _SPACE_TAGS:
            raise ValueError(f"unknown space tag {self.tag!r}")
        if self.boundary_points < 8:
            raise ValueError("need at least 8 boundary points")


# ---------------------------------------------------------------------------
# Decay classes: certified coefficient bounds and tail sums


@dataclass(frozen=True)
class FinitelySupported:
    degree: int
    peak: float = 1.0

    def coeff_bound(self, k: int) -> float:
        return self.peak if k <= self.degree else 0.0

    def tail_l1(self, n: int) -> float:
        return 0.0 if n >= self.degree else self.peak * (self.degree - n)

    def tail_sq(self, n: int) -> float:
        return 0.0 if n >= self.degree else self.peak**2 * (self.degree - n)


@dataclass(frozen=True)
class Geometric:
    c: float
    rho: float

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError("geometric decay needs 0 < rho < 1")

    def coeff_bound(self, k: int) -> float:
        return self.c * self.rho**k

    def tail_l1(self, n: int) -> float:
        return self.c * self.rho ** (n + 1) / (1.0 - self.rho)

    def tail_sq(self, n: int) -> float:
        return self.c**2 * self.rho ** (2 * (n + 1)) / (1.0 - self.rho**2)


@dataclass(frozen=True)
class PowerLaw:
    c: float
    alpha: float

    def __post_init__(self):
        if not self.alpha > 1.0:
            raise ValueError("power-law decay needs alpha > 1")

    def coeff_bound(self, k: int) -> float:
        return self.c * (k + 1.0) ** (-self.alpha)

    def tail_l1(self, n: int) -> float:
        # sum_{k>n} (k+1)^-alpha <= integral_{n+1}^inf x^-alpha dx
        return self.c * (n + 1.0) ** (1.0 - self.alpha) / (self.alpha - 1.0)

    def tail_sq(self, n: int) -> float:
        return self.c**2 * (n + 1.0) ** (1.0 - 2.0 * self.alpha) / (2.0 * self.alpha - 1.0)


@dataclass(frozen=True)
class CappedDecay:
    """Decay of a partial sum: the base bound up to ``degree``, zero beyond."""

    base: object
    degree: int

    def coeff_bound(self, k: int) -> float:
        return self.base.coeff_bound(k) if k <= self.degree else 0.0

    def tail_l1(self, n: int) -> float:
        return 0.0 if n >= self.degree else self.base.tail_l1(n)

    def tail_sq(self, n: int) -> float:
        return 0.0 if n >= self.degree else self.base.tail_sq(n)


@dataclass(frozen=True)
class SumDecay:
    left: object
    right: object

    def coeff_bound(self, k: int) -> float:
        return self.left.coeff_bound(k) + self.right.coeff_bound(k)

    def tail_l1(self, n: int) -> float:
        return self.left.tail_l1(n) + self.right.tail_l1(n)

    def tail_sq(self, n: int) -> float:
        return (math.sqrt(self.left.tail_sq(n)) + math.sqrt(self.right.tail_sq(n))) ** 2


# ---------------------------------------------------------------------------
# Taylor functions


class TaylorFunction:
    """Lazy coefficient stream with a declared decay class and a home space."""

    __slots__ = ("_coeff", "_block", "decay", "space", "name")

    def __init__(self, coeff=None, block=None, decay=None, space: SeriesSpace = SeriesSpace(),
                 name: str = ""):
        if coeff is None and block is None:
            raise ValueError("need coeff or block")
        if decay is None:
            raise ValueError("experiments refuse undeclared-decay coefficient streams")
        self._coeff = coeff
        self._block = block
        self.decay = decay
        self.space = space
        self.name = name

    def coeff(self, k: int) -> complex:
        if self._coeff is not None:
            return complex(self._coeff(k))
        return complex(self._block(k, k + 1)[0])

    def coeff_array(self, upto: int) -> np.ndarray:
        """Coefficients a_0 .. a_upto as a dense array."""
        if self._block is not None:
            return np.asarray(self._block(0, upto + 1), dtype=complex)
        return np.asarray([self.coeff(k) for k in range(upto + 1)], dtype=complex)

    def in_space(self, space: SeriesSpace) -> "TaylorFunction":
        return TaylorFunction(self._coeff, self._block, self.decay, space, self.name)


def taylor_from_coefficients(coeffs: Sequence[complex], space: SeriesSpace = SeriesSpace(),
                             name: str = "") -> TaylorFunction:
    arr = np.asarray(list(coeffs), dtype=complex)
    if arr.size == 0:
        arr = np.zeros(1, dtype=complex)
    peak = float(np.max(np.abs(arr))) if arr.size else 0.0
    degree = arr.size - 1

    def block(lo, hi):
        out = np.zeros(hi - lo, dtype=complex)
        take = max(0, min(hi, degree + 1) - lo)
        if take > 0:
            out[:take] = arr[lo:lo + take]
        return out

    return TaylorFunction(block=block, decay=FinitelySupported(degree, peak),
                          space=space, name=name or "polynomial")


def geometric_taylor(c: float, rho: float, space: SeriesSpace = SeriesSpace()) -> TaylorFunction:
    def block(lo, hi):
        ks = np.arange(lo, hi, dtype=float)
        return c * np.exp(ks * math.log(rho)) + 0j

    return TaylorFunction(block=block, decay=Geometric(abs(c), rho), space=space,
                          name=f"geometric({c:g},{rho:g})")


def power_taylor(c: float, alpha: float, space: SeriesSpace = SeriesSpace()) -> TaylorFunction:
    def block(lo, hi):
        ks = np.arange(lo, hi, dtype=float)
        return c * (ks + 1.0) ** (-alpha) + 0j

    return TaylorFunction(block=block, decay=PowerLaw(abs(c), alpha), space=space,
                          name=f"power({c:g},{alpha:g})")


def monomial_taylor(k: int, space: SeriesSpace = SeriesSpace()) -> TaylorFunction:
    def block(lo, hi):
        return (np.arange(lo, hi) == k).astype(complex)

    return TaylorFunction(block=block, decay=FinitelySupported(k, 1.0), space=space,
                          name=f"monomial({k})")


def taylor_sub(f: TaylorFunction, g: TaylorFunction) -> TaylorFunction:
    if f.space != g.space:
        raise ValueError("space mismatch")
    return TaylorFunction(
        block=lambda lo, hi: f.coeff_array(hi - 1)[lo:] - g.coeff_array(hi - 1)[lo:],
        decay=SumDecay(f.decay, g.decay),
        space=f.space,
        name=f"{f.name}-{g.name}",
    )


# ---------------------------------------------------------------------------
# Norms with certified truncation


def _truncation_for(decay, tag: str, tail_tol: float, max_terms: int) -> int:
    """Smallest power-of-two-ish N with certified norm tail <= tail_tol."""
    tail = (lambda n: math.sqrt(decay.tail_sq(n))) if tag == H2 else decay.tail_l1
    n = 8
    while n <= max_terms:
        if tail(n) <= tail_tol:
            return n
        n *= 2
    raise NonSummableError(
        f"decay class {decay!r} cannot certify a {tag} tail of {tail_tol:g} "
        f"within {max_terms} coefficients")


def series_norm(f: TaylorFunction, trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> float:
    """Norm of f in its space, with certified truncation error <= tail_tol."""
    tag = f.space.tag
    n = _truncation_for(f.decay, tag, trunc.tail_tol, trunc.max_terms)
    coeffs = f.coeff_array(n)
    if tag == H2:
        return float(np.sqrt(np.sum(np.abs(coeffs) ** 2)))
    if tag == WIENER:
        return float(np.sum(np.abs(coeffs)))
    # disk_grid: max modulus over the boundary grid of the truncated series;
    # underestimates the sup norm by at most the l1 tail (<= tail_tol)
    grid = np.exp(2j * math.pi * np.arange(f.space.boundary_points) / f.space.boundary_points)
    values = np.polynomial.polynomial.polyval(grid, coeffs)
    return float(np.max(np.abs(values)))


def disk_grid_error_bound(f: TaylorFunction, trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> float:
    """Approximation bound carried by disk-grid norm reports."""
    n = _truncation_for(f.decay, DISK_GRID, trunc.tail_tol, trunc.max_terms)
    return float(f.decay.tail_l1(n))


# ---------------------------------------------------------------------------
# Partial sums, dilates, logarithmic means


def partial_sum(f: TaylorFunction, n: int) -> TaylorFunction:
    """Truncation to coefficients 0..n; a projection (idempotent exactly)."""
    if n < 0:
        raise ValueError("partial sum index must be >= 0")

    def block(lo, hi):
        out = f.coeff_array(hi - 1)[lo:].copy() if lo <= hi - 1 else np.zeros(0, dtype=complex)
        ks = np.arange(lo, hi)
        out[ks > n] = 0.0
        return out

    if isinstance(f.decay, (FinitelySupported, CappedDecay)) and _decay_degree(f.decay) <= n:
        decay = f.decay
    else:
        decay = CappedDecay(f.decay, n)
    return TaylorFunction(block=block, decay=decay, space=f.space, name=f"S_{n}({f.name})")


def _decay_degree(decay) -> int:
    if isinstance(decay, FinitelySupported):
        return decay.degree
    if isinstance(decay, CappedDecay):
        return decay.degree
    return -1


def _multiplied(f: TaylorFunction, mult_block: Callable[[int, int], np.ndarray],
                name: str) -> TaylorFunction:
    """Coefficientwise |multiplier| <= 1 transform; decay class is inherited."""
    return TaylorFunction(
        block=lambda lo, hi: mult_block(lo, hi) * f.coeff_array(hi - 1)[lo:],
        decay=f.decay,
        space=f.space,
        name=name,
    )


def _dilate_mult_block(r: float):
    def mult(lo, hi):
        ks = np.arange(lo, hi, dtype=float)
        if r == 0.0:
            return (ks == 0).astype(complex)
        return np.exp(ks * math.log(r)) + 0j

    return mult


#: Literal double-sum verification is skipped when the weighted partial-sum
#: series needs more than this many terms (r extremely close to 1); the
#: identity is checked at moderate r where the literal sum is affordable.
DILATE_VERIFY_CAP = 20000


def _dilate_double_sum(f: TaylorFunction, r: float, upto: int, m_terms: int) -> np.ndarray:
    """Literal (1-r) sum_m r^m S_m(f), truncated at m_terms, coefficients 0..upto."""
    coeffs = f.coeff_array(upto)
    acc = np.zeros(upto + 1, dtype=complex)
    for m in range(m_terms + 1):
        w = (1.0 - r) * r**m
        end = min(m, upto)
        acc[: end + 1] += w * coeffs[: end + 1]
    return acc


def dilate_dual_deviation(f: TaylorFunction, r: float,
                          trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> float:
    """Max coefficientwise gap between multiplier and double-sum dilates."""
    if not 0.0 <= r < 1.0:
        raise ValueError("dilate needs 0 <= r < 1")
    upto = _truncation_for(f.decay, WIENER, trunc.tail_tol, trunc.max_terms)
    coeffs = f.coeff_array(upto)
    peak = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    if r == 0.0:
        m_terms = 0
    else:
        m_terms = max(upto, int(math.ceil(math.log(max(trunc.tail_tol, 1e-300) /
                                                   max(peak, 1e-300)) / math.log(r))))
    if m_terms > DILATE_VERIFY_CAP:
        raise ValueError(f"double-sum verification needs {m_terms} terms; over the cap")
    double = _dilate_double_sum(f, r, upto, m_terms)
    mult = _dilate_mult_block(r)(0, upto + 1) * coeffs
    return float(np.max(np.abs(mult - double)))


def abel_dilate(f: TaylorFunction, r: float,
                trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                verify: Optional[bool] = None) -> TaylorFunction:
    """Radial dilate: coefficient multiplier a_k -> a_k r^k.

    The multiplier form and the literal weighted sum of partial sums must
    agree coefficientwise within tail_tol; ``verify=None`` runs that check
    whenever the literal sum stays under DILATE_VERIFY_CAP terms.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("dilate needs 0 <= r < 1")
    if verify is None:
        verify = r == 0.0 or (math.log(trunc.tail_tol) / math.log(r) if r > 0 else 0) <= DILATE_VERIFY_CAP
    if verify:
        deviation = dilate_dual_deviation(f, r, trunc)
        tolerance = 4.0 * trunc.tail_tol + 1e-13 * max(1.0, float(np.max(np.abs(f.coeff_array(8)))))
        if deviation > tolerance:
            raise DilateConsistencyError(
                f"dilate forms disagree by {deviation:.3e} at r={r} (tolerance {tolerance:.3e})")
    return _multiplied(f, _dilate_mult_block(r), f"A_{r:g}({f.name})")


def log_mean_multiplier(k: int, r: float,
                        quad: QuadratureConfig = QuadratureConfig()) -> float:
    """lambda_k(r) = (-1/log(1-r)) integral_0^r t^k/(1-t) dt; lambda_0 = 1 exactly."""
    if not 0.0 < r < 1.0:
        raise ValueError("logarithmic mean needs 0 < r < 1")
    if k == 0:
        return 1.0
    # substitute u = -log(1-t): integrand becomes (1-e^-u)^k, bounded by 1
    big_u = -math.log1p(-r)

    def gbatch(us: np.ndarray) -> np.ndarray:
        return ((-np.expm1(-us)) ** k).astype(complex)[:, None]

    arr, _, _ = _adaptive(gbatch, 0.0, big_u, quad.tol, quad.max_depth)
    return float(arr[0].real / big_u)


def log_taylor_mean(f: TaylorFunction, r: float,
                    quad: QuadratureConfig = QuadratureConfig(),
                    trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> TaylorFunction:
    """Logarithmic mean: coefficient k gets the multiplier lambda_k(r)."""
    if not 0.0 < r < 1.0:
        raise ValueError("logarithmic mean needs 0 < r < 1")
    cache: dict = {}

    def mult(lo, hi):
        out = np.empty(hi - lo, dtype=complex)
        for i, k in enumerate(range(lo, hi)):
            if k not in cache:
                cache[k] = log_mean_multiplier(k, r, quad)
            out[i] = cache[k]
        return out

    return _multiplied(f, mult, f"L_{r:g}({f.name})")


# ---------------------------------------------------------------------------
# Summability experiments

PARTIAL_SUMS = "partial_sums"
ABEL_DILATE = "abel_dilate"
LOG_MEAN = "log_mean"

_CHAIN_STEPS = (PARTIAL_SUMS, ABEL_DILATE, LOG_MEAN)

CONVERGED_TO_ZERO = "converged_to_zero"
NOT_CONVERGED = "not_converged"
UNDECIDED = "inconclusive"

_DECAY_SLOPE = 0.05


@dataclass(frozen=True)
class TaylorConvergenceReport:
    function: str
    space: str
    chain: tuple
    cells: tuple           # (grid_param, distance) pairs
    status: str
    route: str             # "tol" | "decay-trend" | ""
    residual: float
    notes: tuple = field(default=())

    def rows(self) -> list:
        out = [("distance", p, d, "") for p, d in self.cells]
        out.append(("overall", "", self.residual, self.status))
        return out

    def to_jsonable(self) -> dict:
        return {
            "function": self.function,
            "space": self.space,
            "chain": list(self.chain),
            "cells": [[str(p), d] for p, d in self.cells],
            "status": self.status,
            "route": self.route,
            "residual": self.residual,
            "notes": list(self.notes),
        }


def _classify_distances(distances: Sequence[float], tol: float) -> tuple:
    """Three-valued convergence-to-zero verdict; returns (status, route)."""
    window = min(4, len(distances))
    tail = distances[-window:]
    if all(d <= tol for d in tail):
        return CONVERGED_TO_ZERO, "tol"
    half = distances[len(distances) // 2:]
    slope = _slope(half)
    non_increasing = all(b <= a * (1.0 + 1e-9) + 1e-15 for a, b in zip(half, half[1:]))
    if non_increasing and slope <= -_DECAY_SLOPE:
        return CONVERGED_TO_ZERO, "decay-trend"
    if distances[-1] > 10.0 * tol and slope > -0.01:
        return NOT_CONVERGED, ""
    return UNDECIDED, ""


def _slope(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    ys = np.log(np.maximum(np.abs(np.asarray(values, dtype=float)), 1e-300))
    xs = np.log(np.arange(1, len(values) + 1, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])


def _apply_step(step: str, g: TaylorFunction, param, quad, trunc) -> TaylorFunction:
    if step == PARTIAL_SUMS:
        return partial_sum(g, int(param))
    if step == ABEL_DILATE:
        return abel_dilate(g, float(param), trunc, verify=False)
    if step == LOG_MEAN:
        return log_taylor_mean(g, float(param), quad, trunc)
    raise ValueError(f"unknown chain step {step!r}")


def taylor_summability_experiment(f: TaylorFunction, space: SeriesSpace, chain: Sequence[str],
                                  depth: int = 20, tol: float = 1e-4,
                                  quad: QuadratureConfig = QuadratureConfig(),
                                  trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> TaylorConvergenceReport:
    """Distance ||chain_param(f) - f|| along the parameter grid, judged against 0.

    The verdict is three-valued like the kernel regularity checks: reaching
    tol, or a clean monotone decay trend, counts as convergence-to-zero
    evidence (logarithmic means approach f only logarithmically, so a fixed
    threshold alone would reject them on any finite grid).
    """
    chain = tuple(chain)
    if not chain:
        raise ValueError("empty chain")
    for step in chain:
        if step not in _CHAIN_STEPS:
            raise ValueError(f"unknown chain step {step!r}")
    domains = {NAT if step == PARTIAL_SUMS else UNIT_INTERVAL for step in chain}
    if len(domains) > 1:
        raise ValueError("chain mixes discrete and continuous parameters")
    domain = domains.pop()

    fx = f.in_space(space)
    grid = parameter_grid(domain, depth)
    cells = []
    distances = []
    for param in grid:
        g = fx
        for step in chain:
            g = _apply_step(step, g, param, quad, trunc)
        dist = series_norm(taylor_sub(g, fx), trunc)
        cells.append((param, dist))
        distances.append(dist)
    status, route = _classify_distances(distances, tol)
    notes = ()
    if space.tag == DISK_GRID:
        notes = (f"disk-grid norm underestimates the sup norm by at most "
                 f"{disk_grid_error_bound(fx, trunc):.3e}",)
    return TaylorConvergenceReport(f.name, space.tag, chain, tuple(cells),
                                   status, route, distances[-1], notes)
