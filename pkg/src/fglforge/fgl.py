"""The universal formal group law in Hurewicz coordinates.

The Lazard ring is represented only through its image in Z[b1, b2, ...]: the
law is ``F(x, y) = exp(log x + log y)`` where

    exp(x) = x + b1 x^2 + b2 x^3 + ...

and ``log`` is its compositional inverse, ``log(x) = x + m1 x^2 + m2 x^3 + ...``.
With this convention ``[P^n] = (n+1) m_n``; e.g. ``m1 = -b1`` and ``a11 = 2 b1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import FGLForgeError
from .ring import B, GradedPoly, M, TLaurent, monomials_of_dim
from .series import Series, _convert


class IntegralityError(FGLForgeError):
    """A coefficient that must be an integer is not (implementation bug signal)."""


@dataclass(frozen=True, eq=False)
class FormalGroupLaw:
    """A two-variable series ``F`` plus, when known, its logarithm and exponential.

    ``kind`` is one of ``universal-b``, ``bp-p-typical``, ``twisted`` or
    ``additive``.
    """

    F: Series
    kind: str
    log: Series | None = field(default=None, repr=False)
    exp: Series | None = field(default=None, repr=False)

    @property
    def x_bound(self):
        return self.F.x_bound

    @property
    def zero(self):
        return self.F.zero

    def coefficient(self, i: int, j: int):
        return self.F.coefficient((i, j))

    def __call__(self, a, b):
        return formal_sum(self, a, b)

    # axiom checks ---------------------------------------------------------

    def check_unit(self) -> bool:
        """F(x, 0) = x and F(0, y) = y."""
        x_only = {e: c for e, c in self.F.coeffs.items() if e[1] == 0}
        y_only = {e: c for e, c in self.F.coeffs.items() if e[0] == 0}
        one = self.zero.one_like()
        return x_only == {(1, 0): one} and y_only == {(0, 1): one}

    def check_commutative(self) -> bool:
        return all(self.F.coefficient((j, i)) == c for (i, j), c in self.F.coeffs.items())

    def check_associative(self, degree: int | None = None) -> bool:
        """F(F(x,y),z) = F(x,F(y,z)) up to total degree ``degree``."""
        N = self.x_bound if degree is None else min(degree, self.x_bound)
        F = self.F.truncate(N)
        x, y, z = (Series.variable(i, 3, N, self.zero) for i in range(3))
        left = F.substitute([F.substitute([x, y]), z])
        right = F.substitute([x, F.substitute([y, z])])
        return left.equal_up_to(right, N)


# ---------------------------------------------------------------------------
# exp and log


def universal_exp(x_bound: int, dim_bound: int) -> Series:
    """``x + b1 x^2 + b2 x^3 + ...`` truncated at degree ``x_bound``."""
    if x_bound < 1 or dim_bound < 0:
        raise ValueError("bounds must be positive")
    zero = GradedPoly.zero(B, dim_bound)
    coeffs = {1: zero.one_like()}
    for n in range(1, x_bound):
        coeffs[n + 1] = GradedPoly.gen(B, n, dim_bound=dim_bound)
    return Series.from_univariate(coeffs, x_bound, zero)


@lru_cache(maxsize=32)
def universal_log(x_bound: int, dim_bound: int) -> Series:
    """Compositional inverse of :func:`universal_exp`; its coefficients are the m_n."""
    return universal_exp(x_bound, dim_bound).invert_composition()


def log_coefficients(dim_bound: int) -> dict:
    """``{n: m_n}`` in the b-alphabet for 1 <= n <= dim_bound."""
    log = universal_log(dim_bound + 1, dim_bound)
    return {n: log.coefficient((n + 1,)) for n in range(1, dim_bound + 1)}


@lru_cache(maxsize=32)
def generic_log_inverse(x_bound: int, dim_bound: int) -> Series:
    """exp in terms of the m-alphabet: inverse of ``x + m1 x^2 + m2 x^3 + ...``.

    Its x^(n+1) coefficient expresses b_n as a polynomial in the m_i.
    """
    zero = GradedPoly.zero(M, dim_bound)
    coeffs = {1: zero.one_like()}
    for n in range(1, x_bound):
        coeffs[n + 1] = GradedPoly.gen(M, n, dim_bound=dim_bound)
    return Series.from_univariate(coeffs, x_bound, zero).invert_composition()


def cp_class(n: int, dim_bound: int | None = None) -> GradedPoly:
    """``[P^n] = (n+1) m_n`` in b-coordinates."""
    D = n if dim_bound is None else dim_bound
    return universal_log(n + 1, D).coefficient((n + 1,)).scale(n + 1)


# ---------------------------------------------------------------------------
# building laws


def _power_table(s: Series, top: int) -> list:
    """``P[a][n] = [x^n] s^a`` for 0 <= a <= top, as dicts."""
    zero = s.zero
    table = [{0: zero.one_like()}]
    current = Series.constant(zero.one_like(), 1, s.x_bound, zero)
    for _ in range(top):
        current = current * s
        table.append({e[0]: c for e, c in current.coeffs.items()})
    return table


def fgl_from_log(log: Series, exp: Series | None = None, kind: str = "twisted", x_bound: int | None = None) -> FormalGroupLaw:
    """``F(x, y) = exp(log x + log y)`` via the binomial expansion.

    With ``P[a][i] = [x^i] log(x)^a`` and ``e_k = [z^k] exp(z)``::

        a_ij = sum_a P[a][i] * sum_b e_{a+b} C(a+b, a) P[b][j]

    which only needs univariate power tables.
    """
    N = log.x_bound if x_bound is None else x_bound
    log = log.truncate(N)
    exp = (log.invert_composition() if exp is None else exp).truncate(N)
    zero = log.zero
    P = _power_table(log, N)
    e = {k: exp.coefficient((k,)) for k in range(1, N + 1)}
    R = {}
    for a in range(0, N + 1):
        for j in range(0, N + 1 - a):
            parts = []
            for b in range(0, j + 1):
                k = a + b
                if k == 0 or k > N or e[k].is_zero():
                    continue
                pbj = P[b].get(j)
                if pbj is None:
                    continue
                parts.append((e[k] * pbj).scale(comb(k, a)))
            if parts:
                R[a, j] = type(zero).sum_many(parts, zero)
    coeffs = {}
    for i in range(0, N + 1):
        for j in range(i, N + 1 - i):
            parts = []
            for a in range(0, i + 1):
                pai = P[a].get(i)
                r = R.get((a, j))
                if pai is None or r is None:
                    continue
                parts.append(pai * r)
            if parts:
                c = type(zero).sum_many(parts, zero)
                if not c.is_zero():
                    coeffs[i, j] = c
                    coeffs[j, i] = c
    F = Series(2, coeffs, N, zero)
    return FormalGroupLaw(F, kind, log, exp)


def universal_fgl(x_bound: int, dim_bound: int, verify_assoc: bool = False) -> FormalGroupLaw:
    """The universal law over the Hurewicz image, with integrality enforced."""
    if x_bound < 1 or dim_bound < 1:
        raise ValueError("bounds must be >= 1")
    exp = universal_exp(x_bound, dim_bound)
    log = universal_log(x_bound, dim_bound)
    law = fgl_from_log(log, exp, "universal-b")
    for (i, j), c in law.F.coeffs.items():
        if not c.is_integral():
            raise IntegralityError(f"a_{i}{j} = {c} is not integral")
    if verify_assoc and not law.check_associative():
        raise FGLForgeError("associativity failed")
    return law


def additive_fgl(zero, x_bound: int) -> FormalGroupLaw:
    one = zero.one_like()
    F = Series(2, {(1, 0): one, (0, 1): one}, x_bound, zero)
    ident = Series.from_univariate({1: one}, x_bound, zero)
    return FormalGroupLaw(F, "additive", ident, ident)


# ---------------------------------------------------------------------------
# formal arithmetic


def _positive_t(a: TLaurent) -> bool:
    return all(k >= 1 for k in a.coeffs)


def evaluate(series: Series, args) -> object:
    """Evaluate a truncated series at ring elements (not Series)."""
    one = args[0].one_like()
    powers = [dict() for _ in args]

    def power(v, k):
        if k == 0:
            return one
        if k not in powers[v]:
            powers[v][k] = power(v, k - 1) * args[v]
        return powers[v][k]

    parts = []
    for e, c in series.coeffs.items():
        term = None
        for v, k in enumerate(e):
            if k:
                pk = power(v, k)
                term = pk if term is None else term * pk
        c = _convert(c, one)
        parts.append(c if term is None else term * c)
    if not parts:
        return one.zero_like()
    return type(one).sum_many(parts, one)


def formal_sum(law: FormalGroupLaw, a, b):
    """``F(a, b)`` for Series (zero constant term) or positive-t TLaurent values."""
    if isinstance(a, Series) and isinstance(b, Series):
        for s in (a, b):
            if not s.constant_term().is_zero():
                raise ValueError("formal_sum arguments need zero constant term")
        return law.F.substitute([a, b])
    if isinstance(a, TLaurent) and isinstance(b, TLaurent):
        if not (_positive_t(a) and _positive_t(b)):
            raise ValueError("formal_sum arguments need positive t-valuation")
        return evaluate(law.F, [a, b])
    raise TypeError("formal_sum needs two Series or two TLaurent values")


def formal_inverse(law: FormalGroupLaw, a):
    """``[-1](a) = exp(-log a)``; needs the law's logarithm."""
    if law.log is None or law.exp is None:
        raise ValueError("formal inverse needs a law with known logarithm")
    if isinstance(a, Series):
        return law.exp.compose(law.log.compose(a).scale(-1))
    return evaluate(law.exp, [-evaluate(law.log, [a])])


def formal_multiple(law: FormalGroupLaw, n: int, a):
    """``[n](a)``: ``[0](a) = 0`` and ``[n](a) = F([n-1](a), a)``.

    Negative ``n`` goes through the formal inverse.
    """
    if n < 0:
        return formal_inverse(law, formal_multiple(law, -n, a))
    result = a.zero_like() if isinstance(a, TLaurent) else a * 0
    for _ in range(n):
        if result.is_zero():
            result = a
        else:
            result = formal_sum(law, result, a)
    return result


def t_series(x_bound: int, zero) -> Series:
    """The variable as a univariate series (used for [n](t))."""
    return Series.variable(0, 1, x_bound, zero)


# ---------------------------------------------------------------------------
# characteristic numbers


@dataclass
class CharacteristicNumbers:
    dim: int
    numbers: dict  # monomial -> rational, every dimension-d b-monomial present
    integral: bool

    def nonzero(self) -> dict:
        return {m: c for m, c in self.numbers.items() if c}


def characteristic_numbers(c: GradedPoly, dim: int | None = None) -> CharacteristicNumbers:
    """Coefficients of ``c`` at every b-monomial of dimension ``dim``.

    Non-integral coefficients are reported through ``integral=False``; the
    input is then not in the image of the Lazard ring.
    """
    if c.alphabet != B:
        raise ValueError("characteristic numbers are read off in the b-alphabet")
    d = c.homogeneous_dim() if dim is None else dim
    if d is None:
        if c.is_zero():
            d = 0
        else:
            raise ValueError(f"{c} is not homogeneous")
    if not c.is_zero() and c.homogeneous_dim() != d:
        raise ValueError(f"{c} is not homogeneous of dimension {d}")
    numbers = {m: c.coefficient(m) for m in monomials_of_dim(B, d)}
    integral = all(type(v) is int for v in numbers.values())
    return CharacteristicNumbers(d, numbers, integral)


__all__ = [
    "FormalGroupLaw",
    "IntegralityError",
    "universal_exp",
    "universal_log",
    "log_coefficients",
    "generic_log_inverse",
    "cp_class",
    "fgl_from_log",
    "universal_fgl",
    "additive_fgl",
    "formal_sum",
    "formal_inverse",
    "formal_multiple",
    "evaluate",
    "t_series",
    "characteristic_numbers",
    "CharacteristicNumbers",
]
