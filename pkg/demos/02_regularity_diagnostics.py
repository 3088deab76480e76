"""Which methods preserve limits?  Numerical Toeplitz-style diagnostics.

A method is regular when it sums every convergent input to its ordinary
limit.  For matrix methods this is equivalent to three checkable row/column
conditions; for kernel methods, to four integral conditions.  The checkers
report three-valued verdicts per condition: finite sampling can falsify a
condition with a witness or accumulate evidence, never prove it.
"""

from sumkit import (
    cesaro_method,
    check_kernel_st,
    check_matrix_st,
    identity_method,
    logarithmic_method,
    scaled_method,
    series_summation_method,
)

print("matrix form (rows bounded / columns vanish / row sums -> 1):")
for spec in (identity_method(), cesaro_method(), series_summation_method()):
    report = check_matrix_st(spec)
    line = f"  {spec.name:>18}: {report.overall}"
    if report.witness:
        line += f"  [{report.witness}]"
    print(line)

print("\nkernel form for the logarithmic method:")
report = check_kernel_st(logarithmic_method(), r_depth=16, exhaust_depth=8)
print(f"  overall: {report.overall}")
print(f"  total-mass values at the largest parameters: "
      + ", ".join(f"{v.real:.9f}" for _, v, _ in report.k4.cells[-3:]))
window = report.k3[4]
print(f"  mass in the window [0, c_4] along the grid: "
      + ", ".join(f"{v:.4f}" for _, v, _ in window.cells[-5:])
      + f"  -> {window.verdict} ({window.note})")

print("\ndoubling the kernel breaks exactly the normalization condition:")
doubled = check_kernel_st(scaled_method(logarithmic_method(), 2.0),
                          r_depth=16, exhaust_depth=8)
print(f"  overall: {doubled.overall}  [{doubled.witness}]")
for check, base in ((doubled.k1, report.k1), (doubled.k2, report.k2)):
    print(f"  {check.condition}: {check.verdict} (was {base.verdict})")
print(f"  k4_total_mass: {doubled.k4.verdict} (was {report.k4.verdict})")
