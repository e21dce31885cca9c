"""
Families where the bounds are exact
===================================

Exponentials of affine functions make most of the integral bounds in this
package collapse to equalities, which makes them good sanity anchors: every
margin should sit at zero up to quadrature error.
"""

from hhverify import FamilySpec, Interval, family_instantiate, verify_theorem

iv = Interval(0.0, 1.0)

# exp(k x) belongs to the multiplicative convexity class for every m once
# alpha = 1, so the gate passes and the comparison runs at each point.
print("theorem  k     m     margin        verdict")
for k in (0.5, 1.0, 2.0):
    f = family_instantiate(FamilySpec("exp_linear", {"k": k}))
    for m in (0.25, 0.5, 1.0):
        for theorem in ("eq4", "eq11", "eq22"):
            r = verify_theorem(theorem, f, iv, m=m)
            print(f"{r.theorem:<8} {k:<5g} {m:<5g} {r.margin:+.3e}   {r.verdict}")

# A constant function is the other equality anchor: for c <= 1 it is a class
# member for every (alpha, m), and the corrected closed forms reproduce the
# constant exactly.
print()
f = family_instantiate(FamilySpec("const", {"c": 0.5}))
for theorem in ("eq31", "eq42"):
    r = verify_theorem(theorem, f, iv, m=0.5, alpha=0.5)
    print(f"{theorem}: lhs={r.lhs:.12g} rhs={r.rhs:.12g} margin={r.margin:+.3e} ({r.verdict})")
