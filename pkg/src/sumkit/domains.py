"""Index domains with compact exhaustions, and limit detection at infinity.

Two domain shapes are supported: the discrete naturals, and half-open
intervals [0, R) with R finite or infinite.  Both come with a canonical
increasing exhaustion by compact windows and a geometric grid of sample
points marching toward the boundary / infinity.

An exact limit at infinity is not computable from finitely many samples, so
the estimator reports three-valued outcomes (converged / diverged /
inconclusive) from a Cauchy-window heuristic, with a residual and an
oscillation flag as diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .vspace import VectorValue

CONVERGED = "converged"
DIVERGED = "diverged"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DiscreteNat:
    """The index set {0, 1, 2, ...} with the discrete topology."""

    def __repr__(self) -> str:
        return "DiscreteNat()"


@dataclass(frozen=True)
class HalfOpenInterval:
    """The interval [0, right) with 0 < right <= inf."""

    right: float = 1.0

    def __post_init__(self):
        if not self.right > 0:
            raise ValueError(f"right end must be positive, got {self.right}")


IndexDomain = Union[DiscreteNat, HalfOpenInterval]

NAT = DiscreteNat()
UNIT_INTERVAL = HalfOpenInterval(1.0)
HALF_LINE = HalfOpenInterval(math.inf)


@dataclass(frozen=True)
class CompactWindow:
    """For DiscreteNat: indices {0,...,hi}; for intervals: [0, hi]."""

    domain: IndexDomain
    hi: float

    def contains(self, t) -> bool:
        return 0 <= t <= self.hi


def exhaustion(domain: IndexDomain, n: int) -> CompactWindow:
    """n-th window of the canonical compact exhaustion (strictly increasing)."""
    if n < 0:
        raise ValueError("exhaustion index must be >= 0")
    if isinstance(domain, DiscreteNat):
        return CompactWindow(domain, n)
    if math.isinf(domain.right):
        return CompactWindow(domain, 2.0**n)
    return CompactWindow(domain, domain.right * (1.0 - 2.0 ** -(n + 1)))


def parameter_grid(domain: IndexDomain, depth: int) -> list:
    """Geometric sample points approaching infinity / the right boundary.

    DiscreteNat: 2^k; [0, R) finite: R(1 - 2^-k); [0, inf): 2^k; k = 1..depth.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if isinstance(domain, DiscreteNat):
        return [2**k for k in range(1, depth + 1)]
    if math.isinf(domain.right):
        return [2.0**k for k in range(1, depth + 1)]
    return [domain.right * (1.0 - 2.0**-k) for k in range(1, depth + 1)]


@dataclass(frozen=True)
class ConvergenceEstimate:
    """Outcome of limit detection on a finite sample path.

    ``residual`` is the diameter of the final window; ``value`` is present
    iff status is converged (and then residual <= tol).  ``stalled`` records
    oscillation evidence: the window diameters stayed large and did not
    shrink over the sampled tail, so the path looks non-Cauchy rather than
    merely slow.  ``failed_points`` lists grid parameters where the
    underlying transform was undefined.
    """

    status: str
    value: Optional[VectorValue]
    residual: float
    samples_used: int
    window: int
    tol: float
    stalled: bool = False
    failed_points: tuple = field(default_factory=tuple)

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED


def _diameter(samples: Sequence[VectorValue], lo: int, hi: int) -> float:
    best = 0.0
    for i in range(lo, hi):
        for j in range(i + 1, hi):
            d = (samples[i] - samples[j]).norm()
            if d > best:
                best = d
    return best


def estimate_limit_at_infinity(
    samples: Sequence[VectorValue],
    window: int = 4,
    tol: float = 1e-6,
    failed_points: tuple = (),
) -> ConvergenceEstimate:
    """Classify a sample path ordered toward infinity.

    Converged: the final ``window`` samples have pairwise diameter <= tol
    (value = last sample).  Diverged: tail norms grow monotonically beyond
    ten times the initial scale.  Otherwise inconclusive, with ``stalled``
    set when the trailing window diameters stay large without shrinking.
    """
    n = len(samples)
    if n == 0:
        raise ValueError("empty sample list")
    w = max(2, min(window, n))

    tail_diam = _diameter(samples, n - w, n)
    if tail_diam <= tol:
        return ConvergenceEstimate(CONVERGED, samples[-1], tail_diam, n, w, tol,
                                   failed_points=failed_points)

    norms = [s.norm() for s in samples]
    initial_scale = max(max(norms[:w]), 1e-300)
    tail_norms = norms[n - w:]
    growing = all(tail_norms[i] < tail_norms[i + 1] for i in range(w - 1))
    if growing and tail_norms[-1] > 10.0 * initial_scale:
        return ConvergenceEstimate(DIVERGED, None, tail_diam, n, w, tol,
                                   failed_points=failed_points)

    # Oscillation evidence: compare the trailing window diameter with the
    # one from the middle of the path; no shrink and far above tol = stalled.
    mid_end = max(w, (n + w) // 2)
    mid_diam = _diameter(samples, mid_end - w, mid_end)
    stalled = tail_diam > 10.0 * tol and tail_diam > 0.5 * mid_diam
    return ConvergenceEstimate(INCONCLUSIVE, None, tail_diam, n, w, tol,
                               stalled=stalled, failed_points=failed_points)
