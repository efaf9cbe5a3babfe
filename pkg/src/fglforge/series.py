"""Truncated power series in one or more variables with ring-valued coefficients.

The coefficient ring is whatever the ``zero`` prototype belongs to: in
practice ``GradedPoly`` (series over the Lazard ring or BP) or ``TLaurent``
(series over BP((t)), used by the Steenrod operation).  A ``Series`` keeps
every monomial of total degree <= ``x_bound``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .errors import NotInvertibleError
from .ring import GradedPoly, TLaurent


def _convert(c, zero):
    """Bring a coefficient into the ring of ``zero`` (lifting polys to t^0)."""
    if isinstance(c, (int, Fraction)):
        return zero.from_scalar(c)
    if type(c) is type(zero):
        return c
    if isinstance(zero, TLaurent) and isinstance(c, GradedPoly):
        return TLaurent.lift(c).with_bound(zero.dim_bound) if c.dim_bound != zero.dim_bound else TLaurent.lift(c)
    raise TypeError(f"cannot convert {type(c).__name__} into {type(zero).__name__}")


def _sum(items, zero):
    items = list(items)
    if not items:
        return zero
    return type(zero).sum_many(items, zero)


class Series:
    """Truncated series ``sum c_e x^e`` over multi-indices e with |e| <= x_bound."""

    __slots__ = ("nvars", "coeffs", "x_bound", "zero")

    def __init__(self, nvars: int, coeffs: Mapping, x_bound: int, zero):
        self.nvars = nvars
        self.x_bound = x_bound
        self.zero = zero
        clean = {}
        for e, c in coeffs.items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            if sum(e) > x_bound:
                continue
            c = _convert(c, zero)
            if not c.is_zero():
                clean[e] = c
        self.coeffs = clean

    # constructors ---------------------------------------------------------

    @classmethod
    def variable(cls, i: int, nvars: int, x_bound: int, zero):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): zero.one_like()}, x_bound, zero)

    @classmethod
    def constant(cls, c, nvars: int, x_bound: int, zero):
        return cls(nvars, {(0,) * nvars: c}, x_bound, zero)

    @classmethod
    def from_univariate(cls, coeffs: Mapping[int, object], x_bound: int, zero):
        return cls(1, {(n,): c for n, c in coeffs.items()}, x_bound, zero)

    def like(self, coeffs, x_bound=None, nvars=None):
        return Series(self.nvars if nvars is None else nvars, coeffs, self.x_bound if x_bound is None else x_bound, self.zero)

    # inspection -----------------------------------------------------------

    def coefficient(self, *e):
        if len(e) == 1 and isinstance(e[0], tuple):
            e = e[0]
        return self.coeffs.get(tuple(e), self.zero)

    def __getitem__(self, e):
        if isinstance(e, int):
            e = (e,)
        return self.coefficient(tuple(e))

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        return min((sum(e) for e in self.coeffs), default=None)

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.zero)

    def items_by_degree(self):
        return sorted(self.coeffs.items(), key=lambda ec: (sum(ec[0]), ec[0]))

    # arithmetic -----------------------------------------------------------

    def _other(self, other):
        if isinstance(other, Series):
            if other.nvars != self.nvars:
                raise ValueError("series in different numbers of variables")
            return other
        return Series.constant(other, self.nvars, self.x_bound, self.zero)

    def __add__(self, other):
        o = self._other(other)
        keys = set(self.coeffs) | set(o.coeffs)
        coeffs = {}
        for e in keys:
            a, b = self.coeffs.get(e), o.coeffs.get(e)
            coeffs[e] = a if b is None else (b if a is None else a + b)
        return Series(self.nvars, coeffs, min(self.x_bound, o.x_bound), self.zero)

    __radd__ = __add__

    def __neg__(self):
        return self.like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply every coefficient by a scalar or a coefficient-ring element."""
        if isinstance(c, (int, Fraction)):
            return self.like({e: v * c for e, v in self.coeffs.items()})
        c = _convert(c, self.zero)
        return self.like({e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("series in different numbers of variables")
        N = min(self.x_bound, other.x_bound)
        a_items = [(e, sum(e), c) for e, c in self.coeffs.items()]
        b_items = sorted(((e, sum(e), c) for e, c in other.coeffs.items()), key=lambda x: x[1])
        buckets = {}
        for ea, da, ca in a_items:
            for eb, db, cb in b_items:
                if da + db > N:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                buckets.setdefault(e, []).append(ca * cb)
        coeffs = {e: _sum(cs, self.zero) for e, cs in buckets.items()}
        return Series(self.nvars, coeffs, N, self.zero)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.mul_inverse() ** (-n)
        result = Series.constant(self.zero.one_like(), self.nvars, self.x_bound, self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_inverse(self) -> "Series":
        """Multiplicative inverse; the constant term must be invertible."""
        c0 = self.constant_term()
        if c0.is_zero():
            raise NotInvertibleError("series with zero constant term has no multiplicative inverse")
        c0_inv = c0.inverse()
        rest = (self - Series.constant(c0, self.nvars, self.x_bound, self.zero)).scale(c0_inv)
        total = Series.constant(self.zero.one_like(), self.nvars, self.x_bound, self.zero)
        power = total
        neg = -rest
        for _ in range(self.x_bound):
            power = power * neg
            if power.is_zero():
                break
            total = total + power
        return total.scale(c0_inv)

    # calculus -------------------------------------------------------------

    def derivative(self, var: int = 0) -> "Series":
        coeffs = {}
        for e, c in self.coeffs.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                coeffs[tuple(f)] = c * e[var]
        return self.like(coeffs, self.x_bound - 1)

    def integrate(self) -> "Series":
        if self.nvars != 1:
            raise ValueError("integrate is univariate")
        return self.like({(n + 1,): c * Fraction(1, n + 1) for (n,), c in self.coeffs.items()}, self.x_bound + 1)

    def set_zero(self, var: int) -> "Series":
        """Substitute 0 for one variable (keeps the number of variables)."""
        return self.like({e: c for e, c in self.coeffs.items() if e[var] == 0})

    def truncate(self, x_bound: int) -> "Series":
        return self.like(self.coeffs, min(x_bound, self.x_bound))

    def map_coeffs(self, f: Callable, zero=None) -> "Series":
        zero = self.zero if zero is None else zero
        return Series(self.nvars, {e: f(c) for e, c in self.coeffs.items()}, self.x_bound, zero)

    def lift_to(self, zero) -> "Series":
        """Same series with coefficients moved into the ring of ``zero``."""
        return Series(self.nvars, dict(self.coeffs), self.x_bound, zero)

    # composition ----------------------------------------------------------

    def compose(self, inner: "Series", allow_constant: bool = False) -> "Series":
        """``self(inner)`` for univariate ``self``.

        ``inner`` may have any number of variables but must have zero
        constant term unless ``allow_constant`` is set (only sound when the
        constant is nilpotent modulo the coefficient truncation).
        """
        if self.nvars != 1:
            raise ValueError("compose needs a univariate outer series")
        return self.substitute([inner], allow_constant=allow_constant)

    def substitute(self, inners, allow_constant: bool = False) -> "Series":
        """Substitute one series per variable: ``self(inners[0], inners[1], ...)``."""
        if len(inners) != self.nvars:
            raise ValueError(f"need {self.nvars} inner series")
        inners = [s if isinstance(s, Series) else None for s in inners]
        if any(s is None for s in inners):
            raise TypeError("inner arguments must be Series")
        nv = inners[0].nvars
        zero = inners[0].zero
        if not allow_constant:
            for s in inners:
                if not s.constant_term().is_zero():
                    raise ValueError("inner series has nonzero constant term")
        N = min([self.x_bound] + [s.x_bound for s in inners])
        inners = [s.truncate(N) for s in inners]
        one = Series.constant(zero.one_like(), nv, N, zero)
        powers = [{0: one} for _ in inners]

        def power(v, k):
            table = powers[v]
            if k not in table:
                table[k] = power(v, k - 1) * inners[v]
            return table[k]

        buckets = {}
        for e, c in self.coeffs.items():
            if not allow_constant and sum(e) > N:
                continue
            term = None
            for v, k in enumerate(e):
                if k:
                    pk = power(v, k)
                    term = pk if term is None else term * pk
            if term is None:
                term = one
            c = _convert(c, zero)
            for f, tc in term.coeffs.items():
                buckets.setdefault(f, []).append(tc * c)
        coeffs = {f: _sum(cs, zero) for f, cs in buckets.items()}
        return Series(nv, coeffs, N, zero)

    def invert_composition(self) -> "Series":
        """Compositional inverse g with self(g(x)) = x = g(self(x)).

        The linear coefficient must be invertible.  Coefficients of g are found
        degree by degree, keeping a table of the coefficients of powers of g.
        """
        if self.nvars != 1:
            raise ValueError("compositional inverse is univariate")
        if not self.constant_term().is_zero():
            raise ValueError("series has nonzero constant term")
        a1 = self.coefficient((1,))
        if a1.is_zero():
            raise NotInvertibleError("linear coefficient is zero")
        a1_inv = a1.inverse()
        N = self.x_bound
        zero = self.zero
        a = {n: self.coefficient((n,)) for n in range(2, N + 1)}
        g = {1: a1_inv}
        P = {1: g}  # P[k][n] = [x^n] g^k
        for n in range(2, N + 1):
            for k in range(2, n + 1):
                row = P.setdefault(k, {})
                prev = P[k - 1]
                parts = [g[j] * prev[n - j] for j in range(1, n - k + 2) if (n - j) in prev]
                row[n] = _sum(parts, zero)
            acc = _sum([a[k] * P[k][n] for k in range(2, n + 1) if not a[k].is_zero()], zero)
            g[n] = -(acc * a1_inv)
        return Series.from_univariate(g, N, zero)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def equal_up_to(self, other: "Series", degree: int) -> bool:
        keys = {e for e in set(self.coeffs) | set(other.coeffs) if sum(e) <= degree}
        return all(self.coefficient(e) == other.coefficient(e) for e in keys)

    def __str__(self):
        names = "xyzw"[: self.nvars] if self.nvars <= 4 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.items_by_degree():
            mon = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts) + f" + O({self.x_bound + 1})" if parts else f"O({self.x_bound + 1})"

    def __repr__(self):
        return f"Series(nvars={self.nvars}, x_bound={self.x_bound}, {self})"

