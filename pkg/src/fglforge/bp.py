"""Brown-Peterson coefficients at a prime p.

BP sits inside the Hurewicz image rationally as the polynomial ring on
``lambda_k = m_{p^k - 1}``.  The generators v_k are fixed by Hazewinkel's
recursion

    p * lambda_k = sum_{i=0}^{k-1} lambda_i * v_{k-i}^(p^i),   lambda_0 = 1,

and the congruence ``[p](t)/t = sum_l v_l t^(p^l - 1) mod I(p)^2`` is checked
rather than assumed.  Elements of BP are ``GradedPoly`` values over the
``v`` alphabet; the scalar p plays the role of v_0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .errors import ConfigError, PLocalityError, TruncationError
from .fgl import (
    FormalGroupLaw,
    characteristic_numbers,
    fgl_from_log,
    formal_multiple,
    generic_log_inverse,
    t_series,
    universal_log,
)
from .ring import B, M, GradedPoly, TLaurent, V, is_prime, mono_degree, mono_from_exponents, p_valuation
from .series import Series


def is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


class NotPTypical(ValueError):
    """Element is not in the Q-span of the p-typical generators."""


class BPContext:
    """Generator tables for BP at prime ``p`` up to dimension ``dim_bound``.

    Built once; everything is computed lazily and cached, never mutated.
    """

    def __init__(self, prime: int, dim_bound: int):
        if not is_prime(prime):
            raise ConfigError(f"{prime} is not a prime")
        if dim_bound < 0:
            raise ConfigError("dim_bound must be >= 0")
        self.prime = prime
        self.dim_bound = dim_bound
        self.alphabet = V(prime)
        self.kmax = self.alphabet.max_index(dim_bound)

    def __repr__(self):
        return f"BPContext(p={self.prime}, D={self.dim_bound})"

    # basic elements -------------------------------------------------------

    def v(self, k: int) -> GradedPoly:
        """v_k in the v-alphabet; v_0 is the scalar p."""
        if k == 0:
            return GradedPoly.constant(self.alphabet, self.prime, self.dim_bound)
        return GradedPoly.gen(self.alphabet, k, dim_bound=self.dim_bound)

    def zero(self) -> GradedPoly:
        return GradedPoly.zero(self.alphabet, self.dim_bound)

    def one(self) -> GradedPoly:
        return GradedPoly.one(self.alphabet, self.dim_bound)

    def element(self, pairs) -> GradedPoly:
        """``[(coeff, {index: exponent}), ...]`` as a BP element."""
        return GradedPoly.from_exponents(self.alphabet, pairs, self.dim_bound)

    def monomial(self, ks) -> GradedPoly:
        """Product of v_k over the list ``ks`` (k = 0 contributes p)."""
        x = self.one()
        for k in ks:
            x = x * self.v(k)
        return x

    # Hazewinkel tables ----------------------------------------------------

    @cached_property
    def lambda_v(self) -> dict:
        """lambda_k as rational polynomials in the v_i."""
        p = self.prime
        lam = {0: self.one()}
        for k in range(1, self.kmax + 1):
            acc = self.v(k)
            for i in range(1, k):
                acc = acc + lam[i] * self.v(k - i) ** (p**i)
            lam[k] = acc.scale(Fraction(1, p))
        return lam

    @cached_property
    def m_in_b(self) -> dict:
        """m_n in the b-alphabet, 1 <= n <= D."""
        D = self.dim_bound
        log = universal_log(D + 1, D)
        return {n: log.coefficient((n + 1,)) for n in range(1, D + 1)}

    @cached_property
    def b_in_m(self) -> dict:
        """b_n in the m-alphabet, 1 <= n <= D."""
        D = self.dim_bound
        inv = generic_log_inverse(D + 1, D)
        return {n: inv.coefficient((n + 1,)) for n in range(1, D + 1)}

    @cached_property
    def lambda_b(self) -> dict:
        """lambda_k = m_{p^k - 1} in the b-alphabet."""
        lam = {0: GradedPoly.one(B, self.dim_bound)}
        for k in range(1, self.kmax + 1):
            lam[k] = self.m_in_b[self.prime**k - 1]
        return lam

    @cached_property
    def v_in_b(self) -> dict:
        """Hurewicz image of v_k (k >= 1), checked p-local."""
        p = self.prime
        lam = self.lambda_b
        out = {}
        for k in range(1, self.kmax + 1):
            acc = lam[k].scale(p)
            for i in range(1, k):
                acc = acc - lam[i] * out[k - i] ** (p**i)
            if not acc.is_p_local(p):
                raise PLocalityError(f"v_{k} has non {p}-local b-coordinates: {acc}")
            out[k] = acc
        return out

    # coordinate changes ---------------------------------------------------

    def _check_bound(self, c: GradedPoly):
        top = c.max_dim()
        if top is not None and top > self.dim_bound:
            raise TruncationError(f"element has dimension {top} > context bound {self.dim_bound}")

    def to_m_coordinates(self, c: GradedPoly) -> GradedPoly:
        """Rewrite a b-polynomial as a polynomial in the m_n."""
        if c.alphabet != B:
            raise ValueError("expected a b-alphabet polynomial")
        self._check_bound(c)
        one = GradedPoly.one(M, self.dim_bound)
        return c.substitute(self.b_in_m, one)

    def from_m_coordinates(self, c: GradedPoly) -> GradedPoly:
        one = GradedPoly.one(B, self.dim_bound)
        return c.substitute(self.m_in_b, one)

    def quillen_project(self, c: GradedPoly) -> GradedPoly:
        """Multiplicative projector: m_n -> m_n if n+1 is a power of p, else 0."""
        m = self.to_m_coordinates(c)
        p = self.prime
        # mono[i] is the exponent of m_{i+1}
        kept = {mono: coeff for mono, coeff in m.terms.items()
                if all(e == 0 or is_power_of(i + 2, p) for i, e in enumerate(mono))}
        return self.from_m_coordinates(GradedPoly(M, kept, self.dim_bound))

    def to_v_basis(self, c: GradedPoly) -> GradedPoly:
        """Rewrite a p-typical b-polynomial in the v-alphabet."""
        m = self.to_m_coordinates(c)
        p = self.prime
        images = {}
        for mono in m.terms:
            for i, e in enumerate(mono):
                n = i + 1
                if e and not is_power_of(n + 1, p):
                    raise NotPTypical(f"m_{n} occurs in {c}; not in BP (x) Q")
        for k in range(1, self.kmax + 1):
            images[p**k - 1] = self.lambda_v[k]
        return m.substitute(images, self.one())

    def to_b_basis(self, x: GradedPoly) -> GradedPoly:
        """Hurewicz image of a BP element."""
        self._check_alphabet(x)
        self._check_bound(x)
        return x.substitute(self.v_in_b, GradedPoly.one(B, self.dim_bound))

    def _check_alphabet(self, x: GradedPoly):
        if x.alphabet != self.alphabet:
            raise ValueError(f"expected a BP element over {self.alphabet}, got {x.alphabet}")

    # the law and its [p]-series -------------------------------------------

    def log_series(self, x_bound: int | None = None) -> Series:
        """log_BP(x) = sum_k lambda_k x^(p^k)."""
        N = self.dim_bound + 1 if x_bound is None else x_bound
        coeffs = {}
        k = 0
        while self.prime**k <= N and k <= self.kmax:
            coeffs[self.prime**k] = self.lambda_v[k]
            k += 1
        return Series.from_univariate(coeffs, N, self.zero())

    def fgl(self, x_bound: int | None = None) -> FormalGroupLaw:
        return self._fgl(self.dim_bound + 1 if x_bound is None else x_bound)

    def _fgl(self, x_bound):
        cache = self.__dict__.setdefault("_fgl_cache", {})
        if x_bound not in cache:
            law = fgl_from_log(self.log_series(x_bound), kind="bp-p-typical")
            for (i, j), c in law.F.coeffs.items():
                if not c.is_p_local(self.prime):
                    raise PLocalityError(f"F_BP coefficient a_{i}{j} = {c} is not p-local")
            cache[x_bound] = law
        return cache[x_bound]

    @cached_property
    def p_series(self) -> TLaurent:
        """``[p](t) / t`` as a TLaurent of total dimension 0."""
        N = self.dim_bound + 1
        law = self.fgl(N)
        pt = formal_multiple(law, self.prime, t_series(N, self.zero()))
        coeffs = {n - 1: c for (n,), c in pt.coeffs.items()}
        return TLaurent(self.alphabet, coeffs, 0, None, self.dim_bound)

    def p_series_leq(self, i: int) -> TLaurent:
        """``[p]_{<=i} = sum_{l=0}^{i} v_l t^(p^l - 1)``."""
        if i < 0:
            raise ValueError("i must be >= 0")
        if i > self.kmax:
            raise TruncationError(f"v_{i} has dimension {self.prime**i - 1} > {self.dim_bound}")
        coeffs = {self.prime**l - 1: self.v(l) for l in range(i + 1)}
        return TLaurent(self.alphabet, coeffs, 0, None, self.dim_bound)

    # nu-elements -------------------------------------------------------------

    def nu_element_report(self, k: int) -> dict:
        """Check that v_k is a nu_k-element in its Hurewicz coordinates."""
        p = self.prime
        vb = self.v_in_b[k]
        d = p**k - 1
        nums = characteristic_numbers(vb, d)
        all_div = all(c % p == 0 for c in nums.numbers.values()) if nums.integral else False
        additive = nums.numbers[mono_from_exponents({1: d})]
        return {
            "k": k,
            "dim": d,
            "integral": nums.integral,
            "all_divisible_by_p": all_div,
            "b1_number": additive,
            "b1_number_not_divisible_by_p2": additive % (p * p) != 0,
            "pass": nums.integral and all_div and additive % (p * p) != 0,
        }


# ---------------------------------------------------------------------------
# the filtration by powers of I(p)


def ideal_membership(x: GradedPoly, m: int, p: int | None = None) -> bool:
    """True iff ``x`` lies in I(p)^m.

    Each term c * v^a must satisfy  val_p(c) + |a| >= m.
    """
    if p is None:
        p = x.alphabet.prime
    if x.alphabet.kind != "v" or x.alphabet.prime != p:
        raise ValueError("ideal membership is defined on BP elements")
    if not x.is_p_local(p):
        raise PLocalityError(f"{x} is not {p}-local")
    if m <= 0:
        return True
    return all(p_valuation(c, p) + mono_degree(mono) >= m for mono, c in x.terms.items())


def filtration_level(x: GradedPoly, p: int | None = None):
    """Largest m with x in I(p)^m (None for x = 0)."""
    if p is None:
        p = x.alphabet.prime
    if x.is_zero():
        return None
    if not x.is_p_local(p):
        raise PLocalityError(f"{x} is not {p}-local")
    return min(p_valuation(c, p) + mono_degree(mono) for mono, c in x.terms.items())


def tlaurent_membership(value: TLaurent, m: int) -> dict:
    """Per t-degree ideal membership of a TLaurent's coefficients."""
    p = value.alphabet.prime
    return {k: ideal_membership(c, m, p) for k, c in sorted(value.coeffs.items())}


__all__ = [
    "BPContext",
    "NotPTypical",
    "ideal_membership",
    "filtration_level",
    "tlaurent_membership",
    "is_power_of",
]
