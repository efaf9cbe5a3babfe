"""Exact sparse graded polynomials and Laurent objects in ``t``.

Everything downstream (formal group laws, BP, Steenrod operations) is built
from two value types defined here:

``GradedPoly``
    a sparse polynomial with rational coefficients in one of the generator
    alphabets ``b`` (Hurewicz coordinates), ``m`` (logarithm coordinates) or
    ``v`` (BP generators at a prime).  Generators carry a dimension and every
    polynomial has a dimension bound; terms above it are discarded.

``TLaurent``
    a finitely supported Laurent object in ``t`` (of dimension -1) whose
    coefficients are ``GradedPoly`` values over a common alphabet.

Coefficients are python ints whenever the value is integral and
``fractions.Fraction`` otherwise.  Monomials are dense exponent tuples
``(e1, e2, ...)`` with trailing zeros stripped; ``()`` is the unit monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .errors import AlphabetMismatch, NotInvertibleError, PLocalityError, WindowOverflowError

Monomial = tuple  # dense exponent tuple, trailing zeros stripped


def norm_scalar(c):
    """Return ``c`` as an int when it is integral, else as a Fraction."""
    if type(c) is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    if isinstance(c, float):
        raise TypeError(f"floats are not exact scalars: {c!r}")
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def parse_rational(text) -> int | Fraction:
    return norm_scalar(Fraction(str(text)))


def format_rational(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def p_valuation(c, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = abs(c.numerator), c.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def _min_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# --------------------------------------------------------------------------
# alphabets and monomials


@lru_cache(maxsize=None)
def _gen_dims(kind: str, prime, n: int) -> tuple:
    if kind == "v":
        return tuple(prime**i - 1 for i in range(1, n + 1))
    return tuple(range(1, n + 1))


@dataclass(frozen=True)
class Alphabet:
    """Generator alphabet.

    ``kind`` is ``"b"`` (dim b_i = i), ``"m"`` (dim m_i = i) or ``"v"``
    (dim v_i = p^i - 1, requires ``prime``).
    """

    kind: str
    prime: int | None = None

    def __post_init__(self):
        if self.kind not in ("b", "m", "v"):
            raise ValueError(f"unknown alphabet kind {self.kind!r}")
        if self.kind == "v":
            if not is_prime(self.prime):
                raise ValueError(f"alphabet v needs a prime, got {self.prime!r}")

    def gen_dim(self, i: int) -> int:
        if i < 1:
            raise ValueError("generator indices start at 1")
        if self.kind == "v":
            return self.prime**i - 1
        return i

    def dims(self, n: int) -> tuple:
        return _gen_dims(self.kind, self.prime, n)

    def mono_dim(self, mono: Monomial) -> int:
        if not mono:
            return 0
        return sum(e * d for e, d in zip(mono, self.dims(len(mono))))

    def symbol(self, i: int) -> str:
        return f"{self.kind}{i}"

    def max_index(self, dim_bound: int) -> int:
        """Largest generator index whose dimension is <= dim_bound."""
        i = 0
        while self.gen_dim(i + 1) <= dim_bound:
            i += 1
        return i

    def __repr__(self):
        if self.kind == "v":
            return f"Alphabet('v', p={self.prime})"
        return f"Alphabet({self.kind!r})"


B = Alphabet("b")
M = Alphabet("m")


def V(p: int) -> Alphabet:
    return Alphabet("v", p)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    return tuple([x + y for x, y in zip(a, b)]) + a[len(b):]


def mono_from_exponents(exps: Mapping[int, int]) -> Monomial:
    exps = {int(k): int(v) for k, v in exps.items() if int(v) != 0}
    if not exps:
        return ()
    if min(exps) < 1 or min(exps.values()) < 0:
        raise ValueError(f"bad exponent map {exps}")
    out = [0] * max(exps)
    for i, e in exps.items():
        out[i - 1] = e
    return tuple(out)


def mono_pairs(mono: Monomial) -> tuple:
    """Sparse ``((index, exponent), ...)`` form of a monomial."""
    return tuple((i + 1, e) for i, e in enumerate(mono) if e)


def mono_degree(mono: Monomial) -> int:
    """Number of generator factors counted with multiplicity."""
    return sum(mono)


def mono_sort_key(mono: Monomial, alphabet: Alphabet):
    return (alphabet.mono_dim(mono), mono_pairs(mono))


def monomials_of_dim(alphabet: Alphabet, d: int) -> list:
    """All monomials of exact dimension ``d``, in canonical order."""
    if d < 0:
        return []
    if d == 0:
        return [()]
    n = alphabet.max_index(d)
    dims = alphabet.dims(n)
    found = []

    def rec(i, remaining, exps):
        if remaining == 0:
            found.append(mono_from_exponents(exps))
            return
        if i < 0:
            return
        di = dims[i]
        for e in range(remaining // di, -1, -1):
            if e:
                exps[i + 1] = e
            else:
                exps.pop(i + 1, None)
            rec(i - 1, remaining - e * di, exps)
        exps.pop(i + 1, None)

    rec(n - 1, d, {})
    return sorted(set(found), key=lambda m: mono_sort_key(m, alphabet))


# --------------------------------------------------------------------------
# graded polynomials


class GradedPoly:
    """Sparse rational polynomial over an alphabet, truncated above ``dim_bound``.

    ``dim_bound=None`` means no truncation.  Instances are treated as
    immutable; arithmetic always returns new objects.
    """

    __slots__ = ("alphabet", "terms", "dim_bound", "_items")

    def __init__(self, alphabet: Alphabet, terms: Mapping | None = None, dim_bound=None, _trusted=False):
        self.alphabet = alphabet
        self.dim_bound = dim_bound
        self._items = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            while mono and mono[-1] == 0:
                mono = mono[:-1]
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = norm_scalar(c)
            if c == 0:
                continue
            if dim_bound is not None and alphabet.mono_dim(mono) > dim_bound:
                continue
            clean[mono] = norm_scalar(clean.get(mono, 0) + c)
            if clean[mono] == 0:
                del clean[mono]
        self.terms = clean

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, dim_bound=None):
        return cls(alphabet, {}, dim_bound, _trusted=True)

    @classmethod
    def constant(cls, alphabet, c, dim_bound=None):
        c = norm_scalar(c)
        return cls(alphabet, {(): c} if c else {}, dim_bound, _trusted=True)

    @classmethod
    def one(cls, alphabet, dim_bound=None):
        return cls.constant(alphabet, 1, dim_bound)

    @classmethod
    def gen(cls, alphabet, i, exponent=1, coeff=1, dim_bound=None):
        mono = mono_from_exponents({i: exponent})
        return cls(alphabet, {mono: coeff}, dim_bound)

    @classmethod
    def from_exponents(cls, alphabet, pairs, dim_bound=None):
        """Build from ``[(coeff, {index: exp}), ...]``."""
        terms = {}
        for c, exps in pairs:
            mono = mono_from_exponents(exps)
            terms[mono] = terms.get(mono, 0) + Fraction(c)
        return cls(alphabet, terms, dim_bound)

    def zero_like(self):
        return GradedPoly(self.alphabet, {}, self.dim_bound, _trusted=True)

    def one_like(self):
        return GradedPoly.constant(self.alphabet, 1, self.dim_bound)

    def from_scalar(self, c):
        return GradedPoly.constant(self.alphabet, c, self.dim_bound)

    @staticmethod
    def sum_many(polys: Iterable["GradedPoly"], like: "GradedPoly") -> "GradedPoly":
        acc = {}
        bound = like.dim_bound
        for q in polys:
            if isinstance(q, GradedPoly):
                if q.alphabet != like.alphabet:
                    raise AlphabetMismatch(f"{q.alphabet} vs {like.alphabet}")
                bound = _min_bound(bound, q.dim_bound)
                for mono, c in q.terms.items():
                    acc[mono] = acc.get(mono, 0) + c
            else:
                acc[()] = acc.get((), 0) + q
        return GradedPoly(like.alphabet, acc, bound)

    # inspection -----------------------------------------------------------

    def items(self) -> list:
        """``(monomial, coeff, dim)`` triples sorted by dimension."""
        if self._items is None:
            dim = self.alphabet.mono_dim
            self._items = sorted(((m, c, dim(m)) for m, c in self.terms.items()), key=lambda x: x[2])
        return self._items

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_term(self):
        return self.terms.get((), 0)

    def coefficient(self, mono) -> int | Fraction:
        return self.terms.get(tuple(mono), 0)

    def dims(self) -> set:
        return {d for _, _, d in self.items()}

    def is_homogeneous(self) -> bool:
        return len(self.dims()) <= 1

    def homogeneous_dim(self):
        """The common dimension of all terms, or None for 0 / mixed."""
        ds = self.dims()
        return next(iter(ds)) if len(ds) == 1 else None

    def max_dim(self):
        its = self.items()
        return its[-1][2] if its else None

    def min_dim(self):
        its = self.items()
        return its[0][2] if its else None

    def homogeneous_part(self, d: int) -> "GradedPoly":
        return GradedPoly(self.alphabet, {m: c for m, c, dm in self.items() if dm == d}, self.dim_bound, _trusted=True)

    def sorted_terms(self) -> list:
        """Terms in canonical (graded-lex) order."""
        return sorted(self.terms.items(), key=lambda mc: mono_sort_key(mc[0], self.alphabet))

    def generators(self) -> set:
        return {i + 1 for m in self.terms for i, e in enumerate(m) if e}

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def is_p_local(self, p: int) -> bool:
        return all(type(c) is int or c.denominator % p for c in self.terms.values())

    def check_p_local(self, p: int, what="polynomial"):
        if not self.is_p_local(p):
            raise PLocalityError(f"{what} is not {p}-local: {self}")
        return self

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GradedPoly):
            if other.alphabet != self.alphabet:
                raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = _min_bound(self.dim_bound, o.dim_bound)
        acc = dict(self.terms)
        for m, c in o.terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = norm_scalar(s)
            else:
                acc.pop(m, None)
        if self.dim_bound != o.dim_bound:
            return GradedPoly(self.alphabet, acc, D)
        return GradedPoly(self.alphabet, acc, D, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.alphabet, {m: -c for m, c in self.terms.items()}, self.dim_bound, _trusted=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "GradedPoly":
        c = norm_scalar(c)
        if c == 0:
            return self.zero_like()
        return GradedPoly(self.alphabet, {m: norm_scalar(v * c) for m, v in self.terms.items()}, self.dim_bound, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")
        D = _min_bound(self.dim_bound, other.dim_bound)
        acc = {}
        b_items = other.items()
        for ma, ca, da in self.items():
            if D is not None and da > D:
                break
            for mb, cb, db in b_items:
                if D is not None and da + db > D:
                    break
                m = mono_mul(ma, mb)
                acc[m] = acc.get(m, 0) + ca * cb
        out = {}
        for m, c in acc.items():
            if c:
                out[m] = norm_scalar(c)
        return GradedPoly(self.alphabet, out, D, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "GradedPoly":
        """Multiplicative inverse, valid when the constant term is nonzero.

        The positive-dimensional tail is nilpotent modulo the dimension bound,
        so the geometric series terminates.
        """
        c = self.constant_term()
        if c == 0:
            raise NotInvertibleError(f"constant term of {self} is zero")
        if self.is_constant():
            return self.from_scalar(Fraction(1) / Fraction(c))
        if self.dim_bound is None:
            raise NotInvertibleError("inverse of a non-constant polynomial needs a dimension bound")
        h = (self.scale(Fraction(1) / Fraction(c)) - 1)
        total = self.one_like()
        power = self.one_like()
        for _ in range(self.dim_bound // max(h.min_dim(), 1) + 1):
            power = power * (-h)
            if power.is_zero():
                break
            total = total + power
        return total.scale(Fraction(1) / Fraction(c))

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    # transformations ------------------------------------------------------

    def with_bound(self, dim_bound) -> "GradedPoly":
        return GradedPoly(self.alphabet, self.terms, dim_bound)

    def map_coeffs(self, f: Callable) -> "GradedPoly":
        return GradedPoly(self.alphabet, {m: f(c) for m, c in self.terms.items()}, self.dim_bound)

    def substitute(self, images: Callable[[int], object] | Mapping[int, object], one):
        """Evaluate at generator images in another ring.

        ``images`` maps a generator index to its image; ``one`` is the unit of
        the target ring.  Target elements need ``+``, ``*`` and scalar
        multiplication.
        """
        get = images if callable(images) else images.__getitem__
        powers = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                if e == 1:
                    powers[key] = get(i)
                else:
                    half = power(i, e // 2)
                    sq = half * half
                    powers[key] = sq * get(i) if e % 2 else sq
            return powers[key]

        parts = []
        for mono, c, _ in self.items():
            term = None
            for i, e in enumerate(mono):
                if e:
                    f = power(i + 1, e)
                    term = f if term is None else term * f
            parts.append(one * c if term is None else term * c)
        if not parts:
            return one * 0
        summer = getattr(type(one), "sum_many", None)
        if summer is not None:
            return summer(parts, one)
        total = parts[0]
        for q in parts[1:]:
            total = total + q
        return total

    # display --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for mono, c in self.sorted_terms():
            gens = "*".join(
                self.alphabet.symbol(i) + (f"^{e}" if e > 1 else "") for i, e in mono_pairs(mono)
            )
            c = Fraction(c)
            if not gens:
                body = str(abs(c))
            elif abs(c) == 1:
                body = gens
            else:
                body = f"{abs(c)}*{gens}"
            chunks.append(("-" if c < 0 else "+", body))
        first_sign, first = chunks[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"GradedPoly[{self.alphabet.kind}]({self})"


# --------------------------------------------------------------------------
# Laurent objects in t


def _hi(x):
    return math.inf if x is None else x


def _hi_back(x):
    return None if x == math.inf else x


class TLaurent:
    """Finitely supported Laurent object ``sum_k c_k t^k`` with polynomial coefficients.

    ``tlow`` is a hard floor: construction or windowing that would leave
    nonzero mass below it raises ``WindowOverflowError``.  ``thigh`` is the
    precision: coefficients above it are unknown and dropped.  ``thigh=None``
    means the object is exact modulo the coefficient dimension bound.
    """

    __slots__ = ("alphabet", "dim_bound", "coeffs", "tlow", "thigh")

    def __init__(self, alphabet: Alphabet, coeffs: Mapping | None = None, tlow=None, thigh=None, dim_bound=None):
        self.alphabet = alphabet
        self.dim_bound = dim_bound
        clean = {}
        for k, c in (coeffs or {}).items():
            k = int(k)
            if thigh is not None and k > thigh:
                continue
            if not isinstance(c, GradedPoly):
                c = GradedPoly.constant(alphabet, c, dim_bound)
            elif c.alphabet != alphabet:
                raise AlphabetMismatch(f"{c.alphabet} vs {alphabet}")
            elif c.dim_bound != dim_bound:
                c = c.with_bound(_min_bound(c.dim_bound, dim_bound))
            if not c.is_zero():
                clean[k] = c
        if tlow is None:
            tlow = min(clean) if clean else 0
        if clean and min(clean) < tlow:
            raise WindowOverflowError(f"mass at t^{min(clean)} below window floor t^{tlow}")
        self.coeffs = clean
        self.tlow = tlow
        self.thigh = thigh

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, dim_bound=None):
        return cls(alphabet, {}, 0, None, dim_bound)

    @classmethod
    def one(cls, alphabet, dim_bound=None):
        return cls.lift(GradedPoly.one(alphabet, dim_bound))

    @classmethod
    def lift(cls, poly: GradedPoly, k: int = 0):
        """``poly * t^k``."""
        return cls(poly.alphabet, {k: poly}, k, None, poly.dim_bound)

    @classmethod
    def monomial(cls, alphabet, k, c=1, dim_bound=None):
        return cls(alphabet, {k: GradedPoly.constant(alphabet, c, dim_bound)}, k, None, dim_bound)

    def zero_like(self):
        return TLaurent(self.alphabet, {}, 0, None, self.dim_bound)

    def one_like(self):
        return TLaurent.one(self.alphabet, self.dim_bound)

    def from_scalar(self, c):
        return TLaurent.lift(GradedPoly.constant(self.alphabet, c, self.dim_bound))

    @staticmethod
    def sum_many(items: Iterable, like: "TLaurent") -> "TLaurent":
        buckets = {}
        tlow = math.inf
        thigh = math.inf
        empty = True
        for x in items:
            x = like._coerce(x)
            empty = False
            tlow = min(tlow, x.tlow)
            thigh = min(thigh, _hi(x.thigh))
            for k, c in x.coeffs.items():
                buckets.setdefault(k, []).append(c)
        if empty:
            return like.zero_like()
        zero = GradedPoly.zero(like.alphabet, like.dim_bound)
        coeffs = {k: GradedPoly.sum_many(cs, zero) for k, cs in buckets.items()}
        return TLaurent(like.alphabet, coeffs, tlow, _hi_back(thigh), like.dim_bound)

    # inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, k: int) -> GradedPoly:
        c = self.coeffs.get(k)
        return c if c is not None else GradedPoly.zero(self.alphabet, self.dim_bound)

    def __getitem__(self, k):
        return self.coefficient(k)

    def degrees(self) -> list:
        return sorted(self.coeffs)

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def max_degree(self):
        return max(self.coeffs) if self.coeffs else None

    def total_dim(self):
        """Total dimension d if dim(coeff at t^k) = d + k for every k, else None."""
        d = None
        for k, c in self.coeffs.items():
            hd = c.homogeneous_dim()
            if hd is None:
                return None
            if d is None:
                d = hd - k
            elif hd - k != d:
                return None
        return d

    def is_p_local(self, p) -> bool:
        return all(c.is_p_local(p) for c in self.coeffs.values())

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TLaurent):
            if other.alphabet != self.alphabet:
                raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")
            return other
        if isinstance(other, GradedPoly):
            return TLaurent.lift(other)
        if isinstance(other, (int, Fraction)):
            return self.from_scalar(other)
        raise TypeError(f"cannot combine TLaurent with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for k, c in o.coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        thigh = _hi_back(min(_hi(self.thigh), _hi(o.thigh)))
        return TLaurent(self.alphabet, coeffs, min(self.tlow, o.tlow), thigh, _min_bound(self.dim_bound, o.dim_bound))

    __radd__ = __add__

    def __neg__(self):
        return TLaurent(self.alphabet, {k: -c for k, c in self.coeffs.items()}, self.tlow, self.thigh, self.dim_bound)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return TLaurent(self.alphabet, {k: v.scale(c) for k, v in self.coeffs.items()}, self.tlow, self.thigh, self.dim_bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        thigh = min(_hi(self.thigh) + o.tlow, _hi(o.thigh) + self.tlow)
        buckets = {}
        for ka, ca in self.coeffs.items():
            for kb, cb in o.coeffs.items():
                k = ka + kb
                if k > thigh:
                    continue
                buckets.setdefault(k, []).append(ca * cb)
        D = _min_bound(self.dim_bound, o.dim_bound)
        zero = GradedPoly.zero(self.alphabet, D)
        coeffs = {k: GradedPoly.sum_many(cs, zero) for k, cs in buckets.items()}
        return TLaurent(self.alphabet, coeffs, self.tlow + o.tlow, _hi_back(thigh), D)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GradedPoly)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self, prime: int | None = None) -> "TLaurent":
        """Multiplicative inverse.

        The lowest nonzero coefficient must be a nonzero rational scalar (a
        p-local unit when ``prime`` is given).  The remaining tail is
        inverted by a geometric series that terminates either through the
        coefficient dimension bound or through the t-precision.
        """
        if not self.coeffs:
            raise NotInvertibleError("zero is not invertible")
        k0 = min(self.coeffs)
        lead = self.coeffs[k0]
        if not lead.is_constant():
            raise NotInvertibleError(f"leading coefficient {lead} is not a scalar")
        c = Fraction(lead.constant_term())
        if prime is not None and p_valuation(c, prime) != 0:
            raise NotInvertibleError(f"leading coefficient {c} is not a {prime}-local unit")
        inv_c = Fraction(1) / c
        # self = c t^k0 (1 + h)
        h = TLaurent(
            self.alphabet,
            {k - k0: v.scale(inv_c) for k, v in self.coeffs.items() if k != k0},
            1,
            None if self.thigh is None else self.thigh - k0,
            self.dim_bound,
        )
        precision = None if self.thigh is None else self.thigh - k0
        if h.is_zero():
            steps = 0
        elif precision is not None:
            steps = precision
        else:
            dmin = min(v.min_dim() for v in h.coeffs.values())
            if dmin == 0 or self.dim_bound is None:
                raise NotInvertibleError("geometric series does not terminate; give a finite thigh")
            steps = self.dim_bound // dmin
        total = TLaurent(self.alphabet, {0: GradedPoly.one(self.alphabet, self.dim_bound)}, 0, precision, self.dim_bound)
        power = total
        neg_h = -h
        for _ in range(steps):
            power = power * neg_h
            if power.is_zero():
                break
            total = total + power
        out = total.scale(inv_c)
        return TLaurent(
            self.alphabet,
            {k - k0: v for k, v in out.coeffs.items()},
            -k0,
            None if precision is None else precision - k0,
            self.dim_bound,
        )

    # windows --------------------------------------------------------------

    def shift(self, k: int) -> "TLaurent":
        """Multiply by t^k."""
        return TLaurent(
            self.alphabet,
            {j + k: c for j, c in self.coeffs.items()},
            self.tlow + k,
            None if self.thigh is None else self.thigh + k,
            self.dim_bound,
        )

    def slice_leq(self, bound) -> "TLaurent":
        """Drop the coefficients at t-degree > bound (bound may be math.inf)."""
        if bound == math.inf or bound is None:
            return self
        coeffs = {k: c for k, c in self.coeffs.items() if k <= bound}
        thigh = bound if self.thigh is None else min(self.thigh, bound)
        return TLaurent(self.alphabet, coeffs, min(self.tlow, thigh), thigh, self.dim_bound)

    def slice_geq(self, bound) -> "TLaurent":
        coeffs = {k: c for k, c in self.coeffs.items() if k >= bound}
        return TLaurent(self.alphabet, coeffs, max(self.tlow, bound), self.thigh, self.dim_bound)

    def window(self, tlow: int, thigh) -> "TLaurent":
        """Re-window; raises WindowOverflowError on mass below ``tlow``."""
        return TLaurent(self.alphabet, self.coeffs, tlow, thigh, self.dim_bound)

    def with_bound(self, dim_bound) -> "TLaurent":
        return TLaurent(self.alphabet, self.coeffs, self.tlow, self.thigh, dim_bound)

    def map_coeffs(self, f: Callable[[GradedPoly], GradedPoly]) -> "TLaurent":
        return TLaurent(self.alphabet, {k: f(c) for k, c in self.coeffs.items()}, self.tlow, self.thigh, self.dim_bound)

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GradedPoly)):
            other = self._coerce(other)
        if not isinstance(other, TLaurent):
            return NotImplemented
        return self.alphabet == other.alphabet and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            parts.append(f"({self.coeffs[k]})*t^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TLaurent[{self.alphabet.kind}; {self.tlow}..{self.thigh}]({self})"
