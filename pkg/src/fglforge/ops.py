"""Steenrod and Symmetric operations on the BP coefficient ring.

The Steenrod operation attached to coset representatives ``i_1..i_{p-1}``
has inverse Todd genus

    gamma(x) = x * prod_l (x +_BP [i_l](t)),

a series in x whose coefficients live in BP((t)).  On coefficients St is the
ring map classifying the twisted law ``gamma(F_BP(g(u), g(v)))`` with
``g = gamma^{-1}``.  Its normalized logarithm is ``gamma_1 * log_BP(g(u))``
(``gamma_1`` the x-linear coefficient of gamma), so

    St(lambda_k) = gamma_1 * [u^(p^k)] log_BP(g(u))

and St(v_k) follows from the Hazewinkel recursion.  Projecting onto BP drops
the non p-typical coefficients of that logarithm.

Phi is the unique Laurent object in non-positive t-degrees with
``([p] * Phi)_{<=0} = (x^p - St(x))_{<=0}``; it is found by a triangular
solve and every solved coefficient must be p-local.

Dimensions: t has dimension -1 and St multiplies dimension by p, so St(x) for
x of dimension d has total dimension p*d and lives in t-degrees >= -p*d.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import cached_property

from .bp import BPContext, filtration_level, ideal_membership
from .errors import ConfigError, DivisibilityFailure, FGLForgeError, PLocalityError, TruncationError
from .fgl import formal_multiple, t_series
from .ring import GradedPoly, TLaurent, monomials_of_dim
from .series import Series


def default_reps(p: int) -> tuple:
    return tuple(range(1, p))


def validate_reps(reps, p: int) -> tuple:
    reps = tuple(int(i) for i in reps)
    residues = sorted(i % p for i in reps)
    if residues != list(range(1, p)):
        raise ConfigError(f"coset representatives {reps} do not cover the nonzero residues mod {p} exactly once")
    return reps


def _tlaurent_of(series: Series, ctx: BPContext) -> TLaurent:
    """Univariate series in t (over BP) as a TLaurent."""
    return TLaurent(ctx.alphabet, {n: c for (n,), c in series.coeffs.items()}, 0, None, ctx.dim_bound)


class SteenrodContext:
    """The twisted-law data for St at a fixed prime, bound and coset choice."""

    def __init__(self, ctx: BPContext, reps=None, x_bound: int | None = None):
        p = ctx.prime
        self.ctx = ctx
        self.prime = p
        self.reps = validate_reps(default_reps(p) if reps is None else reps, p)
        self.epsilon = math.prod(self.reps)
        # x-degree needed to read off every lambda_k inside the bound
        self.x_bound = p**ctx.kmax if x_bound is None else x_bound
        if self.x_bound < 1:
            raise ConfigError("x_bound must be >= 1")

    def __repr__(self):
        return f"SteenrodContext(p={self.prime}, D={self.ctx.dim_bound}, reps={self.reps})"

    @property
    def dim_bound(self) -> int:
        return self.ctx.dim_bound

    def _tzero(self) -> TLaurent:
        return TLaurent.zero(self.ctx.alphabet, self.ctx.dim_bound)

    # the inverse Todd genus -------------------------------------------------

    def multiple_of_t(self, i: int) -> TLaurent:
        """``[i](t)`` over F_BP."""
        ctx = self.ctx
        N = ctx.dim_bound + 1
        law = ctx.fgl(N)
        return _tlaurent_of(formal_multiple(law, i, t_series(N, ctx.zero())), ctx)

    def _shifted_factor(self, i: int) -> Series:
        """``x +_BP [i](t)`` as a series in x with TLaurent coefficients.

        The x^a coefficient is sum_b a_ab T^b; it has total dimension a - 1,
        so only a + b <= D + 1 contributes inside the bound.
        """
        D = self.ctx.dim_bound
        N = self.x_bound
        law = self.ctx.fgl(max(N, D + 1))
        T = self.multiple_of_t(i)
        powers = [T.one_like()]
        for _ in range(D + 1):
            powers.append(powers[-1] * T)
        zero = self._tzero()
        buckets = {}
        for (a, b), c in law.F.coeffs.items():
            if a > N:
                continue
            buckets.setdefault(a, []).append(powers[b] * c)
        coeffs = {(a,): TLaurent.sum_many(cs, zero) for a, cs in buckets.items()}
        return Series(1, coeffs, N, zero)

    @cached_property
    def gamma(self) -> Series:
        zero = self._tzero()
        g = Series.variable(0, 1, self.x_bound, zero)
        for i in self.reps:
            g = g * self._shifted_factor(i)
        return g

    @cached_property
    def gamma1(self) -> TLaurent:
        """x-linear coefficient of gamma: ``prod_l [i_l](t) = eps t^(p-1) (1 + ...)``."""
        c = self.gamma.coefficient((1,))
        low = c.min_degree()
        if low != self.prime - 1 or c.coefficient(low) != GradedPoly.constant(c.alphabet, self.epsilon, c.dim_bound):
            raise FGLForgeError(f"gamma_1 does not start with {self.epsilon} t^{self.prime - 1}: {c}")
        return c

    @cached_property
    def gamma_inverse(self) -> Series:
        return self.gamma.invert_composition()

    @cached_property
    def twisted_log(self) -> Series:
        """Normalized logarithm ``gamma_1 * log_BP(g(u))`` of the twisted law."""
        ctx = self.ctx
        g = self.gamma_inverse
        total = g  # lambda_0 = 1
        k = 1
        power = g
        while self.prime**k <= self.x_bound and k <= ctx.kmax:
            power = power ** self.prime
            total = total + power.scale(TLaurent.lift(ctx.lambda_v[k]))
            k += 1
        return total.scale(self.gamma1)

    def twisted_m(self, n: int) -> TLaurent:
        """m'_n, the u^(n+1) coefficient of the twisted logarithm."""
        if n + 1 > self.x_bound:
            raise TruncationError(f"m'_{n} needs x_bound >= {n + 1}, have {self.x_bound}")
        return self.twisted_log.coefficient((n + 1,))

    @cached_property
    def st_lambda(self) -> dict:
        p = self.prime
        return {k: self.twisted_m(p**k - 1) for k in range(1, self.ctx.kmax + 1)}

    @cached_property
    def st_v(self) -> dict:
        """St(v_k) via ``p St(lambda_k) = sum_{i<k} St(lambda_i) St(v_{k-i})^(p^i)``."""
        p = self.prime
        lam = self.st_lambda
        out = {}
        for k in range(1, self.ctx.kmax + 1):
            acc = lam[k].scale(p)
            for i in range(1, k):
                acc = acc - lam[i] * out[k - i] ** (p**i)
            if not acc.is_p_local(p):
                raise PLocalityError(f"St(v_{k}) is not {p}-local")
            out[k] = acc
        return out

    # the operations -----------------------------------------------------------

    def window_for(self, d: int, slack: int | None = None) -> tuple:
        slack = self.prime - 1 if slack is None else slack
        return (-self.prime * d - slack, slack)

    def _check_window(self, d: int, hi: int, what: str):
        need = self.prime * d + hi
        if need > self.ctx.dim_bound:
            raise TruncationError(f"{what} of a dimension {d} element up to t^{hi} needs dimBound >= {need}, have {self.ctx.dim_bound}")

    def steenrod(self, x: GradedPoly, window: tuple | None = None) -> TLaurent:
        """St(x) on the window ``[-p d - slack, slack]`` (or ``window``)."""
        ctx = self.ctx
        ctx._check_alphabet(x)
        x.check_p_local(self.prime, "St input")
        d = x.max_dim() or 0
        lo, hi = self.window_for(d) if window is None else window
        self._check_window(d, hi, "St")
        one = TLaurent.one(ctx.alphabet, ctx.dim_bound)
        value = x.with_bound(ctx.dim_bound).substitute(self.st_v, one)
        return value.window(lo, hi)

    def phi(self, x: GradedPoly) -> TLaurent:
        """The symmetric operation: solve ``([p] Phi)_{<=0} = (x^p - St(x))_{<=0}``."""
        ctx = self.ctx
        p = self.prime
        ctx._check_alphabet(x)
        x.check_p_local(p, "Phi input")
        if x.is_zero():
            return TLaurent(ctx.alphabet, {}, 0, 0, ctx.dim_bound)
        d = x.homogeneous_dim()
        if d is None:
            raise ValueError(f"Phi needs a homogeneous input, got {x}")
        lo = -p * d
        st = self.steenrod(x, window=(lo, 0))
        target = (TLaurent.lift(x.with_bound(ctx.dim_bound) ** p) - st).slice_leq(0)
        ps = ctx.p_series
        phi = {}
        for k in range(lo, 1):
            acc = target.coefficient(k)
            for j in range(1, k - lo + 1):
                if k - j in phi:
                    acc = acc - ps.coefficient(j) * phi[k - j]
            q = acc.scale(Fraction(1, p))
            if not q.is_p_local(p):
                raise DivisibilityFailure(f"Phi({x}) at t^{k}: {acc} is not divisible by {p}")
            if not q.is_zero():
                phi[k] = q
        result = TLaurent(ctx.alphabet, phi, lo, 0, ctx.dim_bound)
        residual = (ps.slice_leq(-lo) * result).slice_leq(0) - target
        if not residual.is_zero():
            raise FGLForgeError(f"Phi residual is nonzero: {residual}")
        return result


def slice_leq(value: TLaurent, bound) -> TLaurent:
    """Keep the t-degrees <= bound (``None`` or ``math.inf`` keep everything)."""
    return value.slice_leq(bound)


# ---------------------------------------------------------------------------
# checks of the congruences


def _membership(value: TLaurent, m: int, p: int) -> dict:
    return {k: ideal_membership(c, m, p) for k, c in sorted(value.coeffs.items())}


def _degrees(member: dict) -> dict:
    return {str(k): ok for k, ok in member.items()}


def verify_prop_stp(sctx: SteenrodContext, ks) -> dict:
    """St(v_k1 ... v_km) = t^(-pd) prod [p]_{<=k_l}  mod I(p)^(m+1), per t-degree."""
    from .serialize import tlaurent_to_json

    ctx = sctx.ctx
    p = sctx.prime
    ks = [int(k) for k in ks]
    if not ks or min(ks) < 1:
        raise ConfigError("monomial indices must be >= 1")
    if max(ks) > ctx.kmax:
        raise TruncationError(f"v_{max(ks)} is above dimBound {ctx.dim_bound}")
    d = sum(p**k - 1 for k in ks)
    x = ctx.monomial(ks)
    lhs = sctx.steenrod(x)
    rhs = TLaurent.one(ctx.alphabet, ctx.dim_bound)
    for k in ks:
        rhs = rhs * ctx.p_series_leq(k)
    rhs = rhs.shift(-p * d)
    lo, hi = sctx.window_for(d)
    diff = lhs - rhs.window(lo, hi)
    member = _membership(diff, len(ks) + 1, p)
    return {
        "check": "prop31",
        "prime": p,
        "dimBound": ctx.dim_bound,
        "monomial": ks,
        "dim": d,
        "modulusPower": len(ks) + 1,
        "membership": _degrees(member),
        "difference": tlaurent_to_json(diff),
        "pass": all(member.values()),
    }


def verify_cor_stid(sctx: SteenrodContext, x: GradedPoly, m: int | None = None) -> dict:
    """The t^(-d(p-1)) coefficient of St(x) is x modulo I(p)^(m+1)."""
    from .serialize import poly_to_json

    ctx = sctx.ctx
    p = sctx.prime
    d = x.homogeneous_dim()
    if d is None:
        raise ValueError(f"{x} is not homogeneous")
    level = filtration_level(x, p)
    m = level if m is None else m
    if level is not None and level < m:
        raise ValueError(f"{x} is not in I({p})^{m}")
    st = sctx.steenrod(x, window=(-p * d, 0))
    coeff = st.coefficient(-d * (p - 1))
    diff = coeff - x.with_bound(ctx.dim_bound)
    ok = ideal_membership(diff, m + 1, p)
    return {
        "check": "cor32",
        "prime": p,
        "element": poly_to_json(x),
        "m": m,
        "tDegree": -d * (p - 1),
        "component": poly_to_json(coeff),
        "difference": poly_to_json(diff),
        "pass": ok,
    }


def verify_coset_independence(ctx: BPContext, reps1, reps2, x: GradedPoly) -> dict:
    """St with two choices of coset representatives agree mod I(p)^2 on I(p)."""
    from .serialize import tlaurent_to_json

    p = ctx.prime
    if not ideal_membership(x, 1, p):
        raise ValueError(f"{x} is not in I({p})")
    a = SteenrodContext(ctx, reps1).steenrod(x)
    b = SteenrodContext(ctx, reps2).steenrod(x)
    diff = a - b
    member = _membership(diff, 2, p)
    return {
        "check": "coset-independence",
        "prime": p,
        "reps1": list(validate_reps(reps1, p)),
        "reps2": list(validate_reps(reps2, p)),
        "membership": _degrees(member),
        "difference": tlaurent_to_json(diff),
        "pass": all(member.values()),
    }


def verify_concentration(sctx: SteenrodContext, x: GradedPoly, m: int | None = None) -> dict:
    """Positive t-degree coefficients of St(x) lie in I(p)^(m+1) for x in I(p)^m."""
    p = sctx.prime
    m = filtration_level(x, p) if m is None else m
    st = sctx.steenrod(x)
    member = _membership(st.slice_geq(1), m + 1, p)
    return {"check": "st-concentration", "prime": p, "m": m, "membership": _degrees(member), "pass": all(member.values())}


def verify_prop_symim(sctx: SteenrodContext, samples, m: int) -> dict:
    """Phi(I(p)^(m+1)) lies in I(p)^m[t^-1]; no sample may fail divisibility."""
    from .serialize import poly_to_json

    p = sctx.prime
    rows = []
    for x in samples:
        if not ideal_membership(x, m + 1, p):
            raise ValueError(f"sample {x} is not in I({p})^{m + 1}")
        row = {"element": poly_to_json(x), "divisibilityFailure": False}
        try:
            phi = sctx.phi(x)
        except DivisibilityFailure as exc:
            row.update(divisibilityFailure=True, error=str(exc), membership={}, ok=False)
        else:
            member = _membership(phi, m, p)
            row.update(membership=_degrees(member), ok=all(member.values()))
        rows.append(row)
    return {
        "check": "prop33",
        "prime": p,
        "m": m,
        "samples": rows,
        "pass": all(r["ok"] for r in rows),
    }


def phi_defect(sctx: SteenrodContext, x: GradedPoly, y: GradedPoly) -> TLaurent:
    """Phi(x + y) - Phi(x) - Phi(y)."""
    return sctx.phi(x + y) - sctx.phi(x) - sctx.phi(y)


def verify_phi_additivity(sctx: SteenrodContext, pairs) -> dict:
    rows = []
    for x, y in pairs:
        defect = phi_defect(sctx, x, y)
        rows.append({"x": str(x), "y": str(y), "defectDegrees": defect.degrees(), "ok": all(k == 0 for k in defect.coeffs)})
    return {"check": "phi-additivity", "prime": sctx.prime, "pairs": rows, "pass": all(r["ok"] for r in rows)}


# ---------------------------------------------------------------------------
# sample generation


def sample_ideal_power(ctx: BPContext, m: int, count: int, seed: int = 0, max_dim: int | None = None) -> list:
    """``count`` distinct homogeneous elements of I(p)^m, reproducible from ``seed``.

    Dimensions are limited so that Phi of each sample fits the context
    (p * dim <= D).  Each term c v^a gets its coefficient scaled by
    p^max(0, m - |a|) times a unit.
    """
    p = ctx.prime
    top = ctx.dim_bound // p if max_dim is None else max_dim
    rng = random.Random(seed)
    by_dim = {d: monomials_of_dim(ctx.alphabet, d) for d in range(0, top + 1)}
    by_dim = {d: ms for d, ms in by_dim.items() if ms}
    units = [u for u in range(-4, 6) if u % p]
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 100 * count:
        attempts += 1
        d = rng.choice(sorted(by_dim))
        monos = by_dim[d]
        terms = {}
        for mono in rng.sample(monos, min(len(monos), rng.randint(1, 2))):
            deg = sum(mono)
            extra = rng.randint(0, 1)
            terms[mono] = rng.choice(units) * p ** (max(0, m - deg) + extra)
        x = GradedPoly(ctx.alphabet, terms, ctx.dim_bound)
        if x.is_zero() or x in seen:
            continue
        seen.add(x)
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# the twisted law computed directly


def twisted_law(sctx: SteenrodContext, x_bound: int | None = None) -> Series:
    """``F'(u, v) = gamma(F_BP(g(u), g(v)))`` as a bivariate series."""
    N = sctx.x_bound if x_bound is None else x_bound
    ctx = sctx.ctx
    zero = sctx._tzero()
    g = sctx.gamma_inverse.truncate(N)
    gu = g.substitute([Series.variable(0, 2, N, zero)])
    gv = g.substitute([Series.variable(1, 2, N, zero)])
    F = ctx.fgl(max(N, ctx.dim_bound + 1)).F.truncate(N)
    inner = F.substitute([gu, gv])
    return sctx.gamma.truncate(N).compose(inner)


def log_of_law(F: Series) -> Series:
    """``log(u) = integral du / (dF/dv)(u, 0)``."""
    dv = F.derivative(1).set_zero(1)
    uni = Series(1, {(e[0],): c for e, c in dv.coeffs.items()}, dv.x_bound, F.zero)
    return uni.mul_inverse().integrate().truncate(F.x_bound)


def twisted_log_check(ctx: BPContext, x_bound: int = 6, reps=None) -> dict:
    """The log of the bivariate twisted law equals ``gamma_1 * log_BP(g(u))``."""
    sctx = SteenrodContext(ctx, reps, x_bound=x_bound)
    F = twisted_law(sctx, x_bound)
    direct = log_of_law(F)
    shortcut = sctx.twisted_log.truncate(x_bound)
    mismatched = [n for n in range(1, x_bound + 1) if direct.coefficient((n,)) != shortcut.coefficient((n,))]
    return {
        "check": "twisted-log",
        "prime": ctx.prime,
        "dimBound": ctx.dim_bound,
        "xBound": x_bound,
        "unit": F.coefficient((1, 0)) == F.zero.one_like() and F.coefficient((0, 1)) == F.zero.one_like(),
        "mismatchedDegrees": mismatched,
        "pass": not mismatched,
    }


__all__ = [
    "SteenrodContext",
    "default_reps",
    "validate_reps",
    "slice_leq",
    "verify_prop_stp",
    "verify_cor_stid",
    "verify_coset_independence",
    "verify_concentration",
    "verify_prop_symim",
    "verify_phi_additivity",
    "phi_defect",
    "sample_ideal_power",
    "twisted_law",
    "log_of_law",
    "twisted_log_check",
]
