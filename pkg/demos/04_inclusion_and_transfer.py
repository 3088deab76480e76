"""Does one method subsume another?  Inclusion and transfer experiments.

Method A is included in method B when every A-summable input is B-summable
with the same limit.  The experiments compare estimator verdicts over test
batteries.  The transfer experiment goes further: once A is scalar-included
in B (validated on a battery) and B shows regularity evidence, A-summability
of an operator family's orbits carries over to B, probe by probe.
"""

import numpy as np

from sumkit import (
    SpaceDescriptor,
    VectorValue,
    abel_method,
    cesaro_method,
    inclusion_experiment,
    scalar_sequence,
    transfer_experiment,
    truncation_family,
)

alt = scalar_sequence(lambda n: (1.0 + (-1.0) ** n) / 2.0, "alternating_series")
ramp = scalar_sequence(lambda n: (-1.0) ** n * (n + 1.0), "alternating_ramp")

print("Cesaro into Abel:")
report = inclusion_experiment(cesaro_method(), abel_method(),
                              [("alt", alt), ("ramp", ramp)], depth=14, tol=1e-3)
for case in report.cases:
    print(f"  {case.label:>5}: A {case.est_a.status:>12}, "
          f"B {case.est_b.status:>12} -> {case.verdict}")

print("\nAbel into Cesaro (strictness witness):")
report = inclusion_experiment(abel_method(), cesaro_method(),
                              [("ramp", ramp)], depth=14, tol=1e-3)
case = report.cases[0]
print(f"  ramp: Abel {case.est_a.status} to "
      f"{complex(case.est_a.value.coords[0]).real:.2e}, "
      f"Cesaro {case.est_b.status} -> {case.verdict}")

print("\ntransfer experiment with coordinate-truncation operators on C^4:")
space = SpaceDescriptor(4, "l2")
rng = np.random.default_rng(5)
probes = []
for _ in range(3):
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    probes.append(VectorValue(x / np.linalg.norm(x), space))
report = transfer_experiment(cesaro_method(), abel_method(),
                             truncation_family(space), probes, depth=24, tol=1e-6)
for hyp in report.hypotheses:
    print(f"  hypothesis {hyp.name:>26}: {'pass' if hyp.passed else 'FAIL'}  {hyp.detail}")
print(f"  every probe transfers: {report.all_transfer}")
for case in report.cases:
    print(f"    {case.label}: distance to target {case.distance:.2e}")
