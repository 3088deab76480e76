"""Empirical inclusion and transfer experiments between summability methods.

Method A is included in method B when every A-summable input is B-summable
with the same limit.  Finite runs can only compare estimator verdicts, so a
case classifies as:

* transfers      -- both converged to the same value (within the combined
                    estimator tolerances);
* violates       -- A converged while B diverged, visibly oscillates
                    (stalled), or converged elsewhere;
* vacuous        -- A itself diverged, so the case says nothing;
* inconclusive   -- an estimator could not decide, or an engine failed.

The transfer experiment checks the operator-family hypothesis battery
(witness convergence, A-summability of probes, regularity evidence for B,
scalar inclusion on a test battery) before testing the conclusion; density
of the witness set is replaced by a finite witness list, which the report
records as a substitution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .domains import (
    CONVERGED,
    DIVERGED,
    NAT,
    ConvergenceEstimate,
    estimate_limit_at_infinity,
    parameter_grid,
)
from .integrate import QuadratureConfig, QuadratureError
from .methods import (
    DEFAULT_TRUNCATION,
    MatrixSpec,
    MethodSpec,
    NonSummableError,
    SeqToFuncSpec,
    SequenceSource,
    TruncationPolicy,
    as_kernel,
    scalar_sequence,
    summability_limit,
)
from .regularity import REGULAR_EVIDENCE, check_kernel_st, check_matrix_st
from .vspace import LinearFunctional, SpaceDescriptor, VectorValue

TRANSFERS = "transfers"
VIOLATES = "violates"
VACUOUS = "vacuous"
UNDECIDED = "inconclusive"

VERDICT_MARGIN = 1e-9

_NOTES = (
    "estimator verdicts are finite-grid evidence; 'violates' quotes a concrete witness case",
    "summability-domain membership uses numeric tail certificates, not proofs",
)


@dataclass(frozen=True)
class CaseResult:
    label: str
    est_a: Optional[ConvergenceEstimate]
    est_b: Optional[ConvergenceEstimate]
    verdict: str
    distance: float = math.nan
    note: str = ""


@dataclass(frozen=True)
class InclusionReport:
    method_a: str
    method_b: str
    cases: tuple
    margin: float
    notes: tuple = field(default=_NOTES)

    @property
    def verdict_counts(self) -> dict:
        counts: dict = {}
        for case in self.cases:
            counts[case.verdict] = counts.get(case.verdict, 0) + 1
        return counts

    @property
    def has_violation(self) -> bool:
        return any(c.verdict == VIOLATES for c in self.cases)

    def rows(self) -> list:
        out = []
        for c in self.cases:
            out.append((f"lim_a[{c.label}]", "", _est_value(c.est_a), _est_status(c.est_a)))
            out.append((f"lim_b[{c.label}]", "", _est_value(c.est_b), _est_status(c.est_b)))
            out.append((f"distance[{c.label}]", "", c.distance, c.verdict))
        return out

    def to_jsonable(self) -> dict:
        return {
            "method_a": self.method_a,
            "method_b": self.method_b,
            "margin": self.margin,
            "cases": [
                {
                    "label": c.label,
                    "status_a": _est_status(c.est_a),
                    "status_b": _est_status(c.est_b),
                    "distance": None if math.isnan(c.distance) else c.distance,
                    "verdict": c.verdict,
                    "note": c.note,
                }
                for c in self.cases
            ],
            "summary": self.verdict_counts,
            "notes": list(self.notes),
        }


def _est_status(est: Optional[ConvergenceEstimate]) -> str:
    return est.status if est is not None else "error"


def _est_value(est: Optional[ConvergenceEstimate]):
    if est is not None and est.value is not None and est.value.dim == 1:
        return complex(est.value.coords[0])
    return ""


def classify_case(est_a: Optional[ConvergenceEstimate],
                  est_b: Optional[ConvergenceEstimate], margin: float) -> tuple:
    """Combine two estimates into an inclusion verdict.  Returns (verdict, distance)."""
    if est_a is None or est_b is None:
        return UNDECIDED, math.nan
    if est_a.status == CONVERGED:
        if est_b.status == CONVERGED:
            dist = (est_a.value - est_b.value).norm()
            return (TRANSFERS if dist <= margin else VIOLATES), dist
        if est_b.status == DIVERGED:
            return VIOLATES, math.nan
        # B inconclusive: a stalled (non-Cauchy, non-growing) path is a
        # concrete oscillation witness; a merely slow path is not.
        return (VIOLATES if est_b.stalled else UNDECIDED), math.nan
    if est_a.status == DIVERGED or est_a.stalled:
        return VACUOUS, math.nan  # evidence that the input is not A-summable
    return UNDECIDED, math.nan


def _as_cases(tests) -> list:
    cases = []
    for i, item in enumerate(tests):
        if isinstance(item, tuple):
            cases.append((str(item[0]), item[1]))
        else:
            label = getattr(item, "name", "") or f"test_{i}"
            cases.append((label, item))
    return cases


def inclusion_experiment(A: MethodSpec, B: MethodSpec, tests, depth: int = 14,
                         tol: float = 1e-6, window: int = 4,
                         trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                         quad: QuadratureConfig = QuadratureConfig()) -> InclusionReport:
    """Run both methods over the test sources and classify case by case."""
    margin = 2.0 * tol + VERDICT_MARGIN
    cases = []
    for label, source in _as_cases(tests):
        est_a = est_b = None
        note = ""
        try:
            est_a = summability_limit(A, source, depth=depth, tol=tol, window=window,
                                      trunc=trunc, quad=quad)
            est_b = summability_limit(B, source, depth=depth, tol=tol, window=window,
                                      trunc=trunc, quad=quad)
        except (NonSummableError, QuadratureError, ValueError) as exc:
            note = f"{type(exc).__name__}: {exc}"
        verdict, dist = classify_case(est_a, est_b, margin)
        cases.append(CaseResult(label, est_a, est_b, verdict, dist, note))
    a_name = getattr(A, "name", "A")
    b_name = getattr(B, "name", "B")
    return InclusionReport(a_name, b_name, tuple(cases), margin)


# ---------------------------------------------------------------------------
# Operator families and the transfer experiment


@dataclass(frozen=True)
class OperatorFamily:
    """Family of operators S_t together with a limit operator S.

    ``dense_witnesses`` stands in for a dense subset: density is not
    finitely checkable, so the family ships finitely many vectors on which
    S_t(w) -> S(w) holds by construction, and the experiment re-checks that
    convergence numerically instead of assuming it.
    """

    name: str
    apply: Callable[[int, VectorValue], VectorValue]
    target: Callable[[VectorValue], VectorValue]
    dense_witnesses: tuple
    space: SpaceDescriptor
    apply_block: Optional[Callable[[np.ndarray, VectorValue], np.ndarray]] = None

    def source_for(self, x: VectorValue) -> SequenceSource:
        if self.apply_block is not None:
            return SequenceSource(
                space=self.space,
                block=lambda lo, hi: self.apply_block(np.arange(lo, hi), x),
                name=f"{self.name}(x)",
            )
        return SequenceSource(
            space=self.space,
            term=lambda n: self.apply(n, x),
            name=f"{self.name}(x)",
        )


def truncation_family(space: SpaceDescriptor) -> OperatorFamily:
    """Coordinate-truncation operators S_n = diag(1 for k <= n) with S = I."""
    dim = space.dim

    def apply(n: int, x: VectorValue) -> VectorValue:
        coords = x.coords.copy()
        coords[n + 1:] = 0.0
        return VectorValue(coords, space)

    def apply_block(ns: np.ndarray, x: VectorValue) -> np.ndarray:
        mask = (np.arange(dim)[None, :] <= ns[:, None]).astype(complex)
        return mask * x.coords[None, :]

    witnesses = tuple(
        VectorValue(np.eye(dim, dtype=complex)[j], space) for j in range(dim)
    )
    return OperatorFamily(
        name="truncation",
        apply=apply,
        target=lambda x: x,
        dense_witnesses=witnesses,
        space=space,
        apply_block=apply_block,
    )


def default_scalar_battery() -> list:
    """Scalar sequences exercising convergent, oscillating and slow cases."""
    return [
        ("constant_one", scalar_sequence(lambda n: np.ones_like(n, dtype=float), "constant_one")),
        ("geometric_0.8", scalar_sequence(lambda n: 0.8**n, "geometric_0.8")),
        ("alternating", scalar_sequence(lambda n: (-1.0) ** n, "alternating")),
        ("harmonic", scalar_sequence(lambda n: 1.0 / (n + 1.0), "harmonic")),
        ("one_plus_geometric", scalar_sequence(lambda n: 1.0 + 2.0 ** (-n.astype(float)), "one_plus_geometric")),
    ]


@dataclass(frozen=True)
class HypothesisRecord:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class TransferReport:
    method_a: str
    method_b: str
    family: str
    hypotheses: tuple
    cases: tuple  # probe CaseResults (est_a/est_b = A-run/B-run against the target)
    applicable: bool
    failed_hypothesis: str = ""
    notes: tuple = field(default=_NOTES + (
        "a finite witness list substitutes for the dense subset hypothesis",))

    @property
    def all_transfer(self) -> bool:
        return self.applicable and all(c.verdict == TRANSFERS for c in self.cases)

    def rows(self) -> list:
        out = [(f"hypothesis[{h.name}]", "", "", PASS_STR if h.passed else FAIL_STR)
               for h in self.hypotheses]
        for c in self.cases:
            out.append((f"distance_b[{c.label}]", "", c.distance, c.verdict))
        out.append(("overall", "", "",
                    "Transfers" if self.all_transfer else
                    ("NotApplicable:" + self.failed_hypothesis if not self.applicable else "Mixed")))
        return out

    def to_jsonable(self) -> dict:
        return {
            "method_a": self.method_a,
            "method_b": self.method_b,
            "family": self.family,
            "applicable": self.applicable,
            "failed_hypothesis": self.failed_hypothesis,
            "hypotheses": [
                {"name": h.name, "passed": h.passed, "detail": h.detail}
                for h in self.hypotheses
            ],
            "cases": [
                {"label": c.label, "verdict": c.verdict,
                 "distance": None if math.isnan(c.distance) else c.distance}
                for c in self.cases
            ],
            "all_transfer": self.all_transfer,
            "notes": list(self.notes),
        }


PASS_STR = "pass"
FAIL_STR = "fail"


def regularity_evidence(spec: MethodSpec, tol: float = 1e-6,
                        quad: QuadratureConfig = QuadratureConfig(),
                        trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                        r_depth: int = 16, exhaust_depth: int = 8):
    """Run the appropriate regularity checker; returns (bool, report)."""
    if isinstance(spec, MatrixSpec):
        report = check_matrix_st(spec, tol=tol, trunc=trunc)
    elif isinstance(spec, SeqToFuncSpec):
        report = check_kernel_st(as_kernel(spec), r_depth=r_depth,
                                 exhaust_depth=exhaust_depth, quad=quad, tol=tol, trunc=trunc)
    else:
        report = check_kernel_st(spec, r_depth=r_depth, exhaust_depth=exhaust_depth,
                                 quad=quad, tol=tol, trunc=trunc)
    return report.overall == REGULAR_EVIDENCE, report


def transfer_experiment(A: MethodSpec, B: MethodSpec, family: OperatorFamily,
                        probes: Sequence[VectorValue], depth: int = 24,
                        tol: float = 1e-6, window: int = 4,
                        scalar_tests=None, scalar_depth: int = 14,
                        scalar_tol: float = 1e-3,
                        trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                        quad: QuadratureConfig = QuadratureConfig()) -> TransferReport:
    """Check the hypothesis battery, then B-summability of every probe orbit.

    The scalar battery compares method limits at its own tolerance
    ``scalar_tol``: battery sequences converge at 1/m rates, so the tight
    conclusion tolerance would leave the inclusion evidence inconclusive.
    """
    hypotheses = []
    a_name = getattr(A, "name", "A")
    b_name = getattr(B, "name", "B")

    def bail(failed: str) -> TransferReport:
        return TransferReport(a_name, b_name, family.name, tuple(hypotheses), (),
                              applicable=False, failed_hypothesis=failed)

    # (1) witness convergence S_t(w) -> S(w) along the index grid
    ok = True
    detail = ""
    for i, w in enumerate(family.dense_witnesses):
        samples = []
        for m in parameter_grid(NAT, scalar_depth):
            samples.extend([family.apply(m, w), family.apply(m + 1, w)])
        est = estimate_limit_at_infinity(samples, window=window, tol=tol)
        target = family.target(w)
        if not est.converged or (est.value - target).norm() > tol + est.residual:
            ok = False
            detail = f"witness {i} did not reach its target"
            break
    hypotheses.append(HypothesisRecord("dense_witness_convergence", ok, detail))
    if not ok:
        return bail("dense_witness_convergence")

    # (2) each probe orbit is A-summable to the target
    a_estimates = []
    ok = True
    detail = ""
    for i, x in enumerate(probes):
        est = summability_limit(A, family.source_for(x), depth=depth, tol=tol,
                                window=window, trunc=trunc, quad=quad)
        target = family.target(x)
        dist = (est.value - target).norm() if est.converged else math.inf
        a_estimates.append((est, target, dist))
        if not est.converged or dist > tol:
            ok = False
            detail = f"probe {i}: A-limit missing or off target (dist {dist:.3g})"
            break
    hypotheses.append(HypothesisRecord("probes_a_summable", ok, detail))
    if not ok:
        return bail("probes_a_summable")

    # (3) regularity evidence for B
    ok, report = regularity_evidence(B, tol=tol, quad=quad, trunc=trunc)
    hypotheses.append(HypothesisRecord(
        "b_regular", ok, f"{b_name}: {report.overall}"))
    if not ok:
        return bail("b_regular")

    # (4) scalar inclusion of A in B on a test battery: validated when no
    # case violates and at least one case positively transfers
    battery = scalar_tests if scalar_tests is not None else default_scalar_battery()
    incl = inclusion_experiment(A, B, battery, depth=scalar_depth, tol=scalar_tol,
                                window=window, trunc=trunc, quad=quad)
    ok = (not incl.has_violation) and any(c.verdict == TRANSFERS for c in incl.cases)
    hypotheses.append(HypothesisRecord(
        "scalar_inclusion", ok,
        f"battery verdicts: {incl.verdict_counts}"))
    if not ok:
        return bail("scalar_inclusion")

    # conclusion: every probe orbit is B-summable to the same target
    cases = []
    for i, (est_a, target, _) in enumerate(a_estimates):
        est_b = summability_limit(B, family.source_for(probes[i]), depth=depth,
                                  tol=tol, window=window, trunc=trunc, quad=quad)
        dist = (est_b.value - target).norm() if est_b.converged else math.nan
        if est_b.converged and dist <= tol:
            verdict = TRANSFERS
        elif est_b.converged or est_b.status == DIVERGED:
            verdict = VIOLATES
        else:
            verdict = UNDECIDED
        cases.append(CaseResult(f"probe_{i}", est_a, est_b, verdict, dist))
    return TransferReport(a_name, b_name, family.name, tuple(hypotheses),
                          tuple(cases), applicable=True)


# ---------------------------------------------------------------------------
# Weak inclusion


def _functional_source(source, phi: LinearFunctional):
    from .methods import FunctionSource

    if isinstance(source, SequenceSource):
        return SequenceSource(
            space=SpaceDescriptor(1, "l2"),
            block=lambda lo, hi: (source.block(lo, hi) @ phi.weights)[:, None],
            name=f"phi({source.name})",
        )
    if isinstance(source, FunctionSource):
        return FunctionSource(
            space=SpaceDescriptor(1, "l2"),
            batch=lambda ts: (source.batch(ts) @ phi.weights)[:, None],
            domain=source.domain,
            name=f"phi({source.name})",
        )
    raise TypeError(f"cannot scalarize source of type {type(source).__name__}")


@dataclass(frozen=True)
class WeakInclusionReport:
    method_a: str
    method_b: str
    cases: tuple  # CaseResult per (test, functional)
    margin: float
    notes: tuple = field(default=_NOTES)

    @property
    def verdict_counts(self) -> dict:
        counts: dict = {}
        for case in self.cases:
            counts[case.verdict] = counts.get(case.verdict, 0) + 1
        return counts

    @property
    def has_violation(self) -> bool:
        return any(c.verdict == VIOLATES for c in self.cases)

    def rows(self) -> list:
        return [(f"distance[{c.label}]", "", c.distance, c.verdict) for c in self.cases]

    def to_jsonable(self) -> dict:
        return {
            "method_a": self.method_a,
            "method_b": self.method_b,
            "margin": self.margin,
            "cases": [
                {"label": c.label, "verdict": c.verdict,
                 "status_a": _est_status(c.est_a), "status_b": _est_status(c.est_b),
                 "distance": None if math.isnan(c.distance) else c.distance}
                for c in self.cases
            ],
            "summary": self.verdict_counts,
            "notes": list(self.notes),
        }


def weak_inclusion_experiment(A: MethodSpec, B: MethodSpec, tests,
                              functionals: Sequence[LinearFunctional],
                              depth: int = 14, tol: float = 1e-6, window: int = 4,
                              trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                              quad: QuadratureConfig = QuadratureConfig()) -> WeakInclusionReport:
    """Functional-wise inclusion: A-summability of phi(v) must transfer to B."""
    margin = 2.0 * tol + VERDICT_MARGIN
    cases = []
    for label, source in _as_cases(tests):
        for i, phi in enumerate(functionals):
            est_a = est_b = None
            note = ""
            try:
                scalarized = _functional_source(source, phi)
                est_a = summability_limit(A, scalarized, depth=depth, tol=tol,
                                          window=window, trunc=trunc, quad=quad)
                est_b = summability_limit(B, scalarized, depth=depth, tol=tol,
                                          window=window, trunc=trunc, quad=quad)
            except (NonSummableError, QuadratureError, ValueError) as exc:
                note = f"{type(exc).__name__}: {exc}"
            verdict, dist = classify_case(est_a, est_b, margin)
            cases.append(CaseResult(f"{label}|phi_{i}", est_a, est_b, verdict, dist, note))
    return WeakInclusionReport(getattr(A, "name", "A"), getattr(B, "name", "B"),
                               tuple(cases), margin)
