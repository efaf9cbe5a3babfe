"""
The total Steenrod operation and the symmetric operation
========================================================

St is computed from the twisted law with inverse Todd genus
x * prod (x +_F [i](t)); Phi divides the non-positive part of x^p - St(x)
by the [p]-series.
"""

from fglforge.bp import BPContext, filtration_level
from fglforge.ops import SteenrodContext, sample_ideal_power, verify_prop_stp

sctx = SteenrodContext(BPContext(2, 9))
v1, v2 = sctx.ctx.v(1), sctx.ctx.v(2)

# St of the generators, as Laurent polynomials in t
print("St(v1) =", sctx.st_v[1])
print("St(v2) =", sctx.st_v[2].window(-6, 0), "+ ...")

# St(v1 v2) agrees with t^-8 [2]_<=1 [2]_<=2 modulo I(2)^3
row = verify_prop_stp(sctx, [1, 2])
print("monomial (1,2):", row["pass"])

# Phi of v1 and of an element of I(2)^2
print("Phi(v1) =", sctx.phi(v1))
x = v1**3 + v2.scale(2)
phi = sctx.phi(x)
print("Phi(v1^3 + 2 v2) =", phi)
print("levels:", filtration_level(x), "->", min(filtration_level(c) for c in phi.coeffs.values()))

# random elements of I(2)^3 land in I(2)^2 after Phi
for y in sample_ideal_power(sctx.ctx, 3, 4, seed=5):
    print(y, "->", min(filtration_level(c) for c in sctx.phi(y).coeffs.values()))
