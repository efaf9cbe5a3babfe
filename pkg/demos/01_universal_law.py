"""
The universal formal group law in Hurewicz coordinates
=======================================================

Build F(x, y) = exp(log x + log y) over Z[b1, b2, ...], check its axioms
and read off the classes of projective spaces.
"""

from fglforge.fgl import characteristic_numbers, cp_class, log_coefficients, universal_fgl

# exp(x) = x + b1 x^2 + b2 x^3 + ...; the log coefficients m_n are its reversion
for n, m in log_coefficients(4).items():
    print(f"m{n} = {m}")

# the law itself, to total degree 5 in x, y
law = universal_fgl(5, 4, verify_assoc=True)
print("a11 =", law.coefficient(1, 1))
print("a12 =", law.coefficient(1, 2))
print("unit:", law.check_unit(), " commutative:", law.check_commutative())

# every coefficient is an integer polynomial although log has denominators
print("integral:", all(c.is_integral() for c in law.F.coeffs.values()))

# [P^n] = (n + 1) m_n; its characteristic numbers are the b-coefficients
for n in (1, 2, 3):
    nums = characteristic_numbers(cp_class(n), n)
    print(f"[P^{n}] =", cp_class(n), " integral:", nums.integral)
