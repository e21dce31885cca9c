"""
Printed vs corrected closed forms
=================================

Two of the closed-form bounds circulate in a version that fails on the
simplest possible input: the constant function f = 1/2 with m = 1. The
package keeps both versions. "printed" is the literal closed form, and
"corrected" applies the square-root repair that restores the inequality.
This script shows the split and where the two versions agree.
"""

from hhverify import Interval, parse, verify_theorem

iv = Interval(0.0, 1.0)
half = parse("0.5")

# The geometric-kernel average of a constant 1/2 is 1/2, but the printed
# right-hand sides evaluate to 1/4: the margin is exactly -0.25.
for theorem in ("eq22", "eq42"):
    for variant in ("printed", "corrected"):
        r = verify_theorem(theorem, half, iv, variant=variant)
        print(f"{theorem}/{variant:<9}: lhs={r.lhs:.6g} rhs={r.rhs:.6g} "
              f"margin={r.margin:+.6g} -> {r.verdict}")
    print()

# For an exponential member both versions hold; the printed form is merely
# slack there, while the corrected one is an equality.
expf = parse("exp(x)")
for variant in ("printed", "corrected"):
    r = verify_theorem("eq22", expf, iv, variant=variant)
    print(f"exp(x) eq22/{variant:<9}: rhs={r.rhs:.12g} margin={r.margin:+.3e}")
