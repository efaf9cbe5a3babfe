"""
Brown-Peterson coefficients at p = 2 and p = 3
==============================================

Hazewinkel generators, the [p]-series, and the congruence of [p](t)/t with
sum v_l t^(p^l - 1) modulo the square of I(p).
"""

from fglforge.bp import BPContext, tlaurent_membership

ctx = BPContext(2, 7)

# v_k in Hurewicz coordinates
for k in range(1, ctx.kmax + 1):
    print(f"v{k} =", ctx.v_in_b[k])

# each v_k is a nu_k-element: all numbers divisible by p, the b1-number not by p^2
for k in range(1, ctx.kmax + 1):
    row = ctx.nu_element_report(k)
    print(f"v{k}: b1-number {row['b1_number']}, pass={row['pass']}")

# the [2]-series divided by t
print("[2](t)/t =", ctx.p_series)

# its difference with 2 + v1 t + v2 t^3 + v3 t^7 lies in I(2)^2 degree by degree
diff = ctx.p_series - ctx.p_series_leq(ctx.kmax)
print("in I(2)^2:", all(tlaurent_membership(diff, 2).values()))

# same at p = 3
ctx3 = BPContext(3, 10)
print("[3](t)/t =", ctx3.p_series)
diff3 = ctx3.p_series - ctx3.p_series_leq(ctx3.kmax)
print("in I(3)^2:", all(tlaurent_membership(diff3, 2).values()))
