"""Summability-method engines: matrix, sequence-to-function, kernel.

A method turns a sequence (or a function on [0, R)) into a new function on a
parameter domain; composing with the limit estimator at infinity gives the
method's generalized limit.

Because membership in a method's domain is not decidable numerically, every
infinite summation here carries a numeric tail certificate instead:

* plain certificate -- the remaining coefficient mass times the observed sup
  of recent term norms is below ``tail_tol``;
* stabilized closure -- recent terms agree to within ``tail_tol``-level
  scatter and the spec knows its exact remaining coefficient weight, so the
  tail is closed analytically with the scatter as the certified error.

Both certificates are evidence from the sampled prefix, not proofs about the
unseen tail; reports and errors say which rule fired.  A summation that
achieves no certificate within ``max_terms`` raises NonSummableError carrying
the partial sum and the best bound seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

from .domains import (
    NAT,
    UNIT_INTERVAL,
    DiscreteNat,
    HalfOpenInterval,
    IndexDomain,
    ConvergenceEstimate,
    INCONCLUSIVE,
    estimate_limit_at_infinity,
    parameter_grid,
)
from .integrate import (
    QuadratureConfig,
    QuadratureError,
    SUBSTITUTION_NONE,
    adaptive_quadrature_batch,
)
from .vspace import SCALAR, SpaceDescriptor, VectorValue


class NonSummableError(RuntimeError):
    """No tail certificate achieved; carries the partial sum and bound."""

    def __init__(self, message, partial: Optional[VectorValue] = None,
                 bound: Optional[float] = None, terms: int = 0):
        super().__init__(message)
        self.partial = partial
        self.bound = bound
        self.terms = terms


@dataclass(frozen=True)
class TruncationPolicy:
    tail_tol: float = 1e-14
    max_terms: int = 1_000_000
    start_block: int = 64
    max_block: int = 65536

    def __post_init__(self):
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_TRUNCATION = TruncationPolicy()


# ---------------------------------------------------------------------------
# Sources


class SequenceSource:
    """Lazy X-valued sequence; ``block`` is the vectorized fast path."""

    def __init__(self, term=None, space: SpaceDescriptor = SCALAR, block=None, name: str = ""):
        if term is None and block is None:
            raise ValueError("need term or block")
        self.space = space
        self.name = name
        self._term = term
        self._block = block

    def term(self, n: int) -> VectorValue:
        if self._term is not None:
            out = self._term(n)
            if isinstance(out, VectorValue):
                return out
            return VectorValue(np.atleast_1d(np.asarray(out, dtype=complex)), self.space)
        return VectorValue(self._block(n, n + 1)[0], self.space)

    def block(self, lo: int, hi: int) -> np.ndarray:
        if self._block is not None:
            arr = np.asarray(self._block(lo, hi), dtype=complex)
            if arr.ndim == 1:
                arr = arr[:, None]
            return arr
        return np.stack([self.term(n).coords for n in range(lo, hi)])


class FunctionSource:
    """Lazy X-valued function on [0, R); ``batch`` is the vectorized path."""

    def __init__(self, value=None, space: SpaceDescriptor = SCALAR, batch=None,
                 domain: HalfOpenInterval = UNIT_INTERVAL, name: str = ""):
        if value is None and batch is None:
            raise ValueError("need value or batch")
        self.space = space
        self.domain = domain
        self.name = name
        self._value = value
        self._batch = batch

    def value(self, t: float) -> VectorValue:
        if self._value is not None:
            out = self._value(t)
            if isinstance(out, VectorValue):
                return out
            return VectorValue(np.atleast_1d(np.asarray(out, dtype=complex)), self.space)
        return VectorValue(self._batch(np.asarray([t]))[0], self.space)

    def batch(self, ts: np.ndarray) -> np.ndarray:
        if self._batch is not None:
            arr = np.asarray(self._batch(ts), dtype=complex)
            if arr.ndim == 1:
                arr = arr[:, None]
            return arr
        return np.stack([self.value(float(t)).coords for t in ts])


def scalar_sequence(fn: Callable[[np.ndarray], np.ndarray], name: str = "") -> SequenceSource:
    """Scalar sequence from a numpy-vectorized formula over the index array."""

    def block(lo, hi):
        return np.asarray(fn(np.arange(lo, hi)), dtype=complex)[:, None]

    return SequenceSource(space=SCALAR, block=block, name=name)


def vector_sequence(fn: Callable[[np.ndarray], np.ndarray], space: SpaceDescriptor,
                    name: str = "") -> SequenceSource:
    """Vector sequence from a vectorized formula: ns -> (len(ns), dim)."""

    def block(lo, hi):
        return np.asarray(fn(np.arange(lo, hi)), dtype=complex)

    return SequenceSource(space=space, block=block, name=name)


def scalar_function(fn: Callable[[np.ndarray], np.ndarray],
                    domain: HalfOpenInterval = UNIT_INTERVAL, name: str = "") -> FunctionSource:
    def batch(ts):
        return np.asarray(fn(np.asarray(ts, dtype=float)), dtype=complex)[:, None]

    return FunctionSource(space=SCALAR, batch=batch, domain=domain, name=name)


def combine_sources(alpha: complex, u, beta: complex, v):
    """alpha*u + beta*v for two sources of the same kind and space."""
    if isinstance(u, SequenceSource) and isinstance(v, SequenceSource):
        if u.space != v.space:
            raise ValueError("space mismatch")
        return SequenceSource(
            space=u.space,
            block=lambda lo, hi: alpha * u.block(lo, hi) + beta * v.block(lo, hi),
            name=f"{alpha}*{u.name}+{beta}*{v.name}",
        )
    if isinstance(u, FunctionSource) and isinstance(v, FunctionSource):
        if u.space != v.space or u.domain != v.domain:
            raise ValueError("space/domain mismatch")
        return FunctionSource(
            space=u.space,
            batch=lambda ts: alpha * u.batch(ts) + beta * v.batch(ts),
            domain=u.domain,
            name=f"{alpha}*{u.name}+{beta}*{v.name}",
        )
    raise TypeError("sources must be of the same kind")


# ---------------------------------------------------------------------------
# Method specs


@dataclass(frozen=True)
class MatrixSpec:
    """Rows a_{m, n}; transform m |-> sum_n a_{m, n} v_n on E = F = naturals."""

    name: str
    entry: Callable[[int, int], complex]
    row_block: Optional[Callable[[int, int, int], np.ndarray]] = None  # (m, lo, hi)
    row_support: Optional[Callable[[int], tuple]] = None  # (lo, hi) inclusive; hi None = infinite
    row_tail_abs: Optional[Callable[[int, int], float]] = None   # sum_{n > N} |a_{m, n}|
    row_tail_sum: Optional[Callable[[int, int], complex]] = None  # sum_{n > N} a_{m, n}

    def coeff_block(self, m: int, lo: int, hi: int) -> np.ndarray:
        if self.row_block is not None:
            return np.asarray(self.row_block(m, lo, hi), dtype=complex)
        return np.asarray([self.entry(m, n) for n in range(lo, hi)], dtype=complex)


@dataclass(frozen=True)
class SeqToFuncSpec:
    """Coefficients a_n(r); transform r |-> sum_n a_n(r) v_n, r in F."""

    name: str
    coeff: Callable[[int, float], complex]
    F: HalfOpenInterval = UNIT_INTERVAL
    coeff_block: Optional[Callable[[float, int, int], np.ndarray]] = None  # (r, lo, hi)
    tail_abs: Optional[Callable[[float, int], float]] = None
    tail_sum: Optional[Callable[[float, int], complex]] = None

    def block(self, r: float, lo: int, hi: int) -> np.ndarray:
        if self.coeff_block is not None:
            return np.asarray(self.coeff_block(r, lo, hi), dtype=complex)
        return np.asarray([self.coeff(n, r) for n in range(lo, hi)], dtype=complex)


@dataclass(frozen=True)
class KernelSpec:
    """Kernel a(r, t) integrated against v over E (counting or Lebesgue)."""

    name: str
    kernel: Callable[[float, float], complex]
    E: IndexDomain = UNIT_INTERVAL
    F: IndexDomain = UNIT_INTERVAL
    measure: str = "lebesgue"
    kernel_batch: Optional[Callable[[float, np.ndarray], np.ndarray]] = None  # (r, ts)
    support: Optional[Callable[[float], tuple]] = None  # (lo, hi) subset of E, else full E
    substitution: str = SUBSTITUTION_NONE
    tail_abs: Optional[Callable[[float, int], float]] = None   # counting measure only
    tail_sum: Optional[Callable[[float, int], complex]] = None

    def batch(self, r: float, ts: np.ndarray) -> np.ndarray:
        if self.kernel_batch is not None:
            return np.asarray(self.kernel_batch(r, ts), dtype=complex)
        return np.asarray([self.kernel(r, float(t)) for t in ts], dtype=complex)


MethodSpec = Union[MatrixSpec, SeqToFuncSpec, KernelSpec]


def method_parameter_domain(spec: MethodSpec) -> IndexDomain:
    if isinstance(spec, MatrixSpec):
        return NAT
    return spec.F


def method_index_domain(spec: MethodSpec) -> IndexDomain:
    if isinstance(spec, KernelSpec):
        return spec.E
    return NAT


# ---------------------------------------------------------------------------
# Builtins


def identity_method() -> MatrixSpec:
    return MatrixSpec(
        name="identity",
        entry=lambda m, n: 1.0 if m == n else 0.0,
        row_block=lambda m, lo, hi: (np.arange(lo, hi) == m).astype(complex),
        row_support=lambda m: (m, m),
        row_tail_abs=lambda m, N: 0.0 if N >= m else 1.0,
        row_tail_sum=lambda m, N: 0.0 if N >= m else 1.0,
    )


def series_summation_method() -> MatrixSpec:
    return MatrixSpec(
        name="series_summation",
        entry=lambda m, n: 1.0 if n <= m else 0.0,
        row_block=lambda m, lo, hi: (np.arange(lo, hi) <= m).astype(complex),
        row_support=lambda m: (0, m),
        row_tail_abs=lambda m, N: float(max(m - N, 0)),
        row_tail_sum=lambda m, N: float(max(m - N, 0)),
    )


def cesaro_method() -> MatrixSpec:
    return MatrixSpec(
        name="cesaro",
        entry=lambda m, n: 1.0 / (m + 1) if n <= m else 0.0,
        row_block=lambda m, lo, hi: (np.arange(lo, hi) <= m) / (m + 1.0) + 0j,
        row_support=lambda m: (0, m),
        row_tail_abs=lambda m, N: max(m - N, 0) / (m + 1.0),
        row_tail_sum=lambda m, N: max(m - N, 0) / (m + 1.0),
    )


def abel_method() -> SeqToFuncSpec:
    def coeff(n, r):
        return (1.0 - r) * r**n

    def coeff_block(r, lo, hi):
        ns = np.arange(lo, hi, dtype=float)
        # r**n via exp(n log r) stays accurate for r close to 1 and large n
        return (1.0 - r) * np.exp(ns * math.log(r)) + 0j if r > 0 else \
            (1.0 - r) * (ns == 0).astype(complex)

    return SeqToFuncSpec(
        name="abel",
        coeff=coeff,
        F=UNIT_INTERVAL,
        coeff_block=coeff_block,
        tail_abs=lambda r, N: r ** (N + 1),
        tail_sum=lambda r, N: r ** (N + 1),
    )


def logarithmic_method() -> KernelSpec:
    def kernel(r, t):
        if 0.0 <= t < r:
            return -1.0 / math.log1p(-r) / (1.0 - t)
        return 0.0

    def kernel_batch(r, ts):
        ts = np.asarray(ts, dtype=float)
        pref = -1.0 / math.log1p(-r)
        inside = (ts >= 0.0) & (ts < r)
        out = np.zeros(ts.shape, dtype=complex)
        out[inside] = pref / (1.0 - ts[inside])
        return out

    return KernelSpec(
        name="logarithmic",
        kernel=kernel,
        E=UNIT_INTERVAL,
        F=UNIT_INTERVAL,
        measure="lebesgue",
        kernel_batch=kernel_batch,
        support=lambda r: (0.0, r),
        substitution="log_boundary",
    )


def scaled_method(spec: MethodSpec, factor: complex) -> MethodSpec:
    """Multiply a method's coefficients/kernel by a constant."""
    factor = complex(factor)
    mag = abs(factor)
    if isinstance(spec, MatrixSpec):
        return replace(
            spec,
            name=f"{factor:g}*{spec.name}" if factor.imag == 0 else f"scaled({spec.name})",
            entry=lambda m, n, _e=spec.entry: factor * _e(m, n),
            row_block=(None if spec.row_block is None
                       else lambda m, lo, hi, _b=spec.row_block: factor * np.asarray(_b(m, lo, hi))),
            row_tail_abs=(None if spec.row_tail_abs is None
                          else lambda m, N, _t=spec.row_tail_abs: mag * _t(m, N)),
            row_tail_sum=(None if spec.row_tail_sum is None
                          else lambda m, N, _t=spec.row_tail_sum: factor * _t(m, N)),
        )
    if isinstance(spec, SeqToFuncSpec):
        return replace(
            spec,
            name=f"scaled({spec.name})",
            coeff=lambda n, r, _c=spec.coeff: factor * _c(n, r),
            coeff_block=(None if spec.coeff_block is None
                         else lambda r, lo, hi, _b=spec.coeff_block: factor * np.asarray(_b(r, lo, hi))),
            tail_abs=(None if spec.tail_abs is None
                      else lambda r, N, _t=spec.tail_abs: mag * _t(r, N)),
            tail_sum=(None if spec.tail_sum is None
                      else lambda r, N, _t=spec.tail_sum: factor * _t(r, N)),
        )
    if isinstance(spec, KernelSpec):
        return replace(
            spec,
            name=f"scaled({spec.name})",
            kernel=lambda r, t, _k=spec.kernel: factor * _k(r, t),
            kernel_batch=(None if spec.kernel_batch is None
                          else lambda r, ts, _b=spec.kernel_batch: factor * np.asarray(_b(r, ts))),
            tail_abs=(None if spec.tail_abs is None
                      else lambda r, N, _t=spec.tail_abs: mag * _t(r, N)),
            tail_sum=(None if spec.tail_sum is None
                      else lambda r, N, _t=spec.tail_sum: factor * _t(r, N)),
        )
    raise TypeError(f"not a method spec: {spec!r}")


def as_kernel(spec: MethodSpec) -> KernelSpec:
    """Recast a matrix or sequence-to-function method as a counting kernel."""
    if isinstance(spec, KernelSpec):
        return spec
    if isinstance(spec, MatrixSpec):
        def support(r):
            if spec.row_support is None:
                return (0, None)
            _, hi = spec.row_support(int(r))  # rows are zero before lo; start at 0
            return (0, hi)

        return KernelSpec(
            name=f"{spec.name}_as_kernel",
            kernel=lambda r, t: spec.entry(int(r), int(t)),
            E=NAT,
            F=NAT,
            measure="counting",
            kernel_batch=lambda r, ts: spec.coeff_block(int(r), int(ts[0]), int(ts[-1]) + 1),
            support=support,
            tail_abs=(None if spec.row_tail_abs is None
                      else lambda r, N: spec.row_tail_abs(int(r), N)),
            tail_sum=(None if spec.row_tail_sum is None
                      else lambda r, N: spec.row_tail_sum(int(r), N)),
        )
    return KernelSpec(
        name=f"{spec.name}_as_kernel",
        kernel=lambda r, t: spec.coeff(int(t), r),
        E=NAT,
        F=spec.F,
        measure="counting",
        kernel_batch=lambda r, ts: spec.block(r, int(ts[0]), int(ts[-1]) + 1),
        support=lambda r: (0, None),
        tail_abs=spec.tail_abs,
        tail_sum=spec.tail_sum,
    )


# ---------------------------------------------------------------------------
# Certified summation engine


def _row_norms(arr: np.ndarray, tag: str) -> np.ndarray:
    mags = np.abs(arr)
    if tag == "l1":
        return np.sum(mags, axis=1)
    if tag == "l2":
        return np.sqrt(np.sum(mags * mags, axis=1))
    return np.max(mags, axis=1)


def _certified_sum(coeff_block, source: SequenceSource, policy: TruncationPolicy,
                   support_end: Optional[int] = None,
                   tail_abs=None, tail_sum=None, label: str = "series"):
    """Sum sum_n c_n v_n with a numeric tail certificate.

    coeff_block(lo, hi) -> complex array; tail_abs/tail_sum(N) describe the
    coefficient tail beyond N (up to support_end).  Returns (coords, bound,
    terms).  Raises NonSummableError when no certificate is reached.
    """
    space = source.space
    dim = space.dim
    acc = np.zeros(dim, dtype=complex)
    n = 0
    block = policy.start_block
    prev_abs = None
    geo_ok = 0
    grow_count = 0

    def fail(msg, bound=None):
        partial = VectorValue(acc, space) if np.all(np.isfinite(acc.view(float))) else None
        raise NonSummableError(f"{label}: {msg}", partial=partial, bound=bound, terms=n)

    while n < policy.max_terms:
        hi = min(n + block, policy.max_terms)
        if support_end is not None:
            hi = min(hi, support_end + 1)
        with np.errstate(over="ignore", invalid="ignore"):
            cs = np.asarray(coeff_block(n, hi), dtype=complex)
            vs = source.block(n, hi)
            if vs.shape != (hi - n, dim):
                raise ValueError(f"source block shape {vs.shape}, expected {(hi - n, dim)}")
            terms = cs[:, None] * vs
        if not np.all(np.isfinite(terms.view(float))):
            fail("non-finite term encountered")
        acc = acc + terms.sum(axis=0)
        vnorms = _row_norms(vs, space.norm_tag)
        sup_recent = float(np.max(vnorms)) if vnorms.size else 0.0
        blk_abs = float(np.sum(np.abs(cs) * vnorms))
        N = hi - 1
        n = hi

        if support_end is not None and n > support_end:
            return acc, 0.0, n

        if tail_abs is not None:
            w_abs = float(tail_abs(N))
            if w_abs * sup_recent <= policy.tail_tol:
                return acc, w_abs * sup_recent, n
            if tail_sum is not None and vs.shape[0] >= 2:
                # center on the last term: exact (dev = 0) for stable blocks
                center = vs[-1]
                dev = float(np.max(_row_norms(vs - center, space.norm_tag)))
                if w_abs * dev <= policy.tail_tol:
                    # stabilized closure: recent terms are flat to within dev,
                    # close the tail with the exact remaining weight
                    acc = acc + complex(tail_sum(N)) * center
                    return acc, w_abs * dev, n

        if blk_abs > 1e200:
            fail("terms overflowing")
        if prev_abs is not None and block == policy.max_block:
            if blk_abs == 0.0 and prev_abs == 0.0:
                return acc, 0.0, n
            if prev_abs > 0.0:
                q = blk_abs / prev_abs
                if q <= 0.999:
                    geo_ok += 1
                    if geo_ok >= 2:
                        tail_est = blk_abs * q / (1.0 - q)
                        if tail_est <= policy.tail_tol:
                            return acc, tail_est, n
                else:
                    geo_ok = 0
            if blk_abs > prev_abs:
                grow_count += 1
                if grow_count >= 8:
                    fail("block sums growing; series looks divergent")
            else:
                grow_count = 0
        if block == policy.max_block:
            prev_abs = blk_abs
        block = min(block * 4, policy.max_block)

    fail("no tail certificate within max_terms")


# ---------------------------------------------------------------------------
# Transforms


def matrix_transform(spec: MatrixSpec, v: SequenceSource, m: int,
                     trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> VectorValue:
    """Row application sum_n a_{m, n} v_n; exact for finitely supported rows."""
    if m < 0:
        raise ValueError("row index must be >= 0")
    support = spec.row_support(m) if spec.row_support is not None else (0, None)
    lo, hi = support
    if lo > 0:
        def coeffs(a, b):
            return spec.coeff_block(m, a + lo, b + lo)

        def vblock(a, b):
            return v.block(a + lo, b + lo)

        shifted = SequenceSource(space=v.space, block=vblock, name=v.name)
        end = None if hi is None else hi - lo
        coords, _, _ = _certified_sum(
            coeffs, shifted, trunc, support_end=end,
            tail_abs=None if spec.row_tail_abs is None else (lambda N: spec.row_tail_abs(m, N + lo)),
            tail_sum=None if spec.row_tail_sum is None else (lambda N: spec.row_tail_sum(m, N + lo)),
            label=f"{spec.name} row {m}")
        return VectorValue(coords, v.space)
    coords, _, _ = _certified_sum(
        lambda a, b: spec.coeff_block(m, a, b), v, trunc, support_end=hi,
        tail_abs=None if spec.row_tail_abs is None else (lambda N: spec.row_tail_abs(m, N)),
        tail_sum=None if spec.row_tail_sum is None else (lambda N: spec.row_tail_sum(m, N)),
        label=f"{spec.name} row {m}")
    return VectorValue(coords, v.space)


def seq2func_transform(spec: SeqToFuncSpec, v: SequenceSource, r: float,
                       trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> VectorValue:
    """Evaluate sum_n a_n(r) v_n with a certified truncation tail."""
    right = spec.F.right
    if not (0.0 <= r < right):
        raise ValueError(f"parameter {r} outside [0, {right})")
    coords, _, _ = _certified_sum(
        lambda a, b: spec.block(r, a, b), v, trunc,
        tail_abs=None if spec.tail_abs is None else (lambda N: spec.tail_abs(r, N)),
        tail_sum=None if spec.tail_sum is None else (lambda N: spec.tail_sum(r, N)),
        label=f"{spec.name} at r={r}")
    return VectorValue(coords, v.space)


def kernel_transform(spec: KernelSpec, v, r: float,
                     quad: QuadratureConfig = QuadratureConfig(),
                     trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> VectorValue:
    """Integrate a(r, .) v(.) over E (componentwise for Lebesgue measure)."""
    if spec.measure == "counting":
        support_end = None
        lo = 0
        if spec.support is not None:
            s_lo, s_hi = spec.support(r)
            lo, support_end = int(s_lo), (None if s_hi is None else int(s_hi))
        if lo != 0:
            raise NotImplementedError("counting supports must start at 0")
        coords, _, _ = _certified_sum(
            lambda a, b: spec.batch(r, np.arange(a, b)), v, trunc,
            support_end=support_end,
            tail_abs=None if spec.tail_abs is None else (lambda N: spec.tail_abs(r, N)),
            tail_sum=None if spec.tail_sum is None else (lambda N: spec.tail_sum(r, N)),
            label=f"{spec.name} at r={r}")
        return VectorValue(coords, v.space)

    if not isinstance(v, FunctionSource):
        raise TypeError("Lebesgue kernels need a FunctionSource")
    if spec.support is not None:
        a, b = spec.support(r)
    else:
        right = spec.E.right if isinstance(spec.E, HalfOpenInterval) else math.inf
        a, b = 0.0, right
    if math.isinf(b):
        raise ValueError("unbounded kernel support needs an explicit support declaration")

    def integrand(ts: np.ndarray) -> np.ndarray:
        return spec.batch(r, ts)[:, None] * v.batch(ts)

    cfg = quad if quad.substitution != SUBSTITUTION_NONE else replace(quad, substitution=spec.substitution)
    result = adaptive_quadrature_batch(integrand, (a, b), cfg, v.space)
    return result.value


def transform_at(spec: MethodSpec, source, param,
                 trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                 quad: QuadratureConfig = QuadratureConfig()) -> VectorValue:
    if isinstance(spec, MatrixSpec):
        return matrix_transform(spec, source, int(param), trunc)
    if isinstance(spec, SeqToFuncSpec):
        return seq2func_transform(spec, source, float(param), trunc)
    if isinstance(spec, KernelSpec):
        return kernel_transform(spec, source, param, quad, trunc)
    raise TypeError(f"not a method spec: {spec!r}")


def summability_limit(spec: MethodSpec, source, depth: int = 20, tol: float = 1e-6,
                      window: int = 4,
                      trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                      quad: QuadratureConfig = QuadratureConfig()) -> ConvergenceEstimate:
    """Evaluate the transform along the parameter grid and detect its limit.

    On a discrete parameter domain each grid point 2^k is sampled together
    with its successor 2^k + 1: a powers-of-two grid alone is parity-blind
    and would certify period-two oscillations as convergent.

    Transform failures at individual grid points are recorded in
    ``failed_points`` rather than aborting; a failure inside the trailing
    estimation window downgrades the estimate to inconclusive.
    """
    F = method_parameter_domain(spec)
    grid = parameter_grid(F, depth)
    if isinstance(F, DiscreteNat):
        params = []
        for m in grid:
            params.extend([m, m + 1])
    else:
        params = list(grid)

    samples = []
    failed = []
    sample_params = []
    for p in params:
        try:
            samples.append(transform_at(spec, source, p, trunc, quad))
            sample_params.append(p)
        except (NonSummableError, QuadratureError) as exc:
            failed.append((p, f"{type(exc).__name__}: {exc}"))

    failed_tuple = tuple(failed)
    if len(samples) < 2:
        return ConvergenceEstimate(INCONCLUSIVE, None, math.inf, len(samples),
                                   window, tol, failed_points=failed_tuple)
    est = estimate_limit_at_infinity(samples, window=window, tol=tol,
                                     failed_points=failed_tuple)
    if failed:
        tail_start = len(params) - 2 * window
        tail_failed = any(params.index(p) >= tail_start for p, _ in failed)
        if est.converged and tail_failed:
            est = replace(est, status=INCONCLUSIVE, value=None)
    return est
