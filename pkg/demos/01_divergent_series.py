"""Summing a divergent series three ways.

The alternating series 1 - 1 + 1 - 1 + ... has no limit of partial sums:
they oscillate between 1 and 0.  Averaging the partial sums (Cesàro) or
weighting them geometrically (Abel) both settle on 1/2, the value classical
summability theory assigns to this series.  Plain series summation of a
non-null sequence, by contrast, diverges outright.
"""

import numpy as np

from sumkit import (
    abel_method,
    cesaro_method,
    identity_method,
    scalar_sequence,
    series_summation_method,
    summability_limit,
)

# partial sums of 1 - 1 + 1 - ... are 1, 0, 1, 0, ...
alt_series = scalar_sequence(lambda n: (1.0 + (-1.0) ** n) / 2.0, "alt_series")

print("limits of the alternating series 1 - 1 + 1 - ... :")
for spec in (identity_method(), cesaro_method(), abel_method()):
    est = summability_limit(spec, alt_series, depth=14, tol=1e-3)
    value = complex(est.value.coords[0]) if est.converged else None
    print(f"  {spec.name:>16}: {est.status:>12}"
          + (f"  value = {value.real:.6f}" if value is not None else ""))

ones = scalar_sequence(lambda n: np.ones_like(n, dtype=float), "ones")
est = summability_limit(series_summation_method(), ones, depth=14, tol=1e-3)
print(f"\nseries summation of 1 + 1 + 1 + ... : {est.status} (partial sums n + 1)")

# a faster-growing oscillation: Abel still sums it, Cesàro cannot
ramp = scalar_sequence(lambda n: (-1.0) ** n * (n + 1.0), "alt_ramp")
for spec in (abel_method(), cesaro_method()):
    est = summability_limit(spec, ramp, depth=14, tol=1e-3)
    value = complex(est.value.coords[0]) if est.converged else None
    print(f"{spec.name:>18} on 1 - 2 + 3 - 4 + ... : {est.status}"
          + (f"  value = {value.real:.2e}" if value is not None else ""))
