"""
Hunting the worst margin
========================

The search minimizes an inequality margin over a box of family and
interval parameters: a low-discrepancy lattice finds the right basin, then
coordinate-wise golden-section refinement polishes it. Against the printed
closed form it recovers the constant-function counterexample on its own.
"""

from hhverify import search_min_margin

result = search_min_margin(
    "const", {"c": (0.05, 0.95)}, "eq22",
    variant="printed", budget=200,
)
print(f"best margin {result.best_margin:+.9g} at c={result.best_params['c']:.6g} "
      f"after {result.evals} evaluations")
print(f"report: {result.report.verdict} (lhs={result.report.lhs:.6g}, rhs={result.report.rhs:.6g})")

# The corrected variant has no violation to find; the minimum over the same
# box stays at numerical zero.
result = search_min_margin(
    "const", {"c": (0.05, 0.95)}, "eq22",
    variant="corrected", budget=200,
)
print(f"\ncorrected variant: best margin {result.best_margin:+.3e} "
      f"({result.report.verdict})")

# Widening the box to interval endpoints and m exercises the same machinery
# on a 4-dimensional space; exp(k x) still refuses to produce a violation.
result = search_min_margin(
    "exp_linear", {"k": (0.1, 3.0), "b": (0.5, 2.0), "m": (0.25, 1.0)}, "eq4",
    budget=300,
)
print(f"\nexp_linear eq4 over (k, b, m): best margin {result.best_margin:+.3e} "
      f"after {result.evals} evaluations ({result.report.verdict})")
