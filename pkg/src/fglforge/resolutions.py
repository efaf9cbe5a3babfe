"""Koszul resolutions, Tor over Z/2, the Rost-motive syzygy report and the
descent step for relations of non-positive codimension.

The Koszul complex on ``v_0 = 2, v_1, ..., v_{n-2}`` resolves the ideal
``I(2, n-2)``.  Term j has basis ``e_I`` for subsets I of {0..n-2} with
|I| = j + 1, and

    d(e_I) = sum_k (-1)^k v_{i_k} e_{I - i_k},      I = {i_0 < ... < i_j}.

Term 0 maps onto the ideal by ``e_{i} -> v_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .bp import BPContext, filtration_level, ideal_membership
from .errors import ConfigError, TruncationError
from .ops import SteenrodContext
from .ring import GradedPoly, V, mono_mul, mono_from_exponents, monomials_of_dim, p_valuation


# ---------------------------------------------------------------------------
# exact sparse rank


def sparse_rank(rows, modulus: int | None = None) -> int:
    """Rank of a list of sparse rows ``{col: value}`` over Q or over Z/modulus."""
    pivots = {}  # col -> normalized row with leading entry 1 at col
    rank = 0
    for row in rows:
        r = {c: (v % modulus if modulus else Fraction(v)) for c, v in row.items()}
        r = {c: v for c, v in r.items() if v}
        while r:
            col = min(r)
            if col not in pivots:
                inv = pow(int(r[col]), -1, modulus) if modulus else 1 / r[col]
                pivots[col] = {c: (v * inv) % modulus if modulus else v * inv for c, v in r.items()}
                rank += 1
                break
            f = r[col]
            for c, v in pivots[col].items():
                nv = r.get(c, 0) - f * v
                if modulus:
                    nv %= modulus
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


# ---------------------------------------------------------------------------
# the complex


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class KoszulComplex:
    """Koszul resolution of (v_0, ..., v_{n-2}) at p = 2 over BP truncated at ``dim_bound``."""

    n: int
    dim_bound: int
    ctx: BPContext = field(repr=False, compare=False)

    @property
    def indices(self) -> tuple:
        return tuple(range(self.n - 1))

    @property
    def top(self) -> int:
        return self.n - 2

    def generator(self, i: int) -> GradedPoly:
        return self.ctx.v(i)

    def generator_dim(self, i: int) -> int:
        return 2**i - 1

    def basis(self, j: int) -> list:
        """Subsets of size j + 1 in lexicographic order."""
        if j < 0 or j > self.top:
            return []
        return list(combinations(self.indices, j + 1))

    def rank(self, j: int) -> int:
        return len(self.basis(j))

    def degree(self, subset) -> int:
        """Internal dimension of e_I."""
        return sum(self.generator_dim(i) for i in subset)

    def differential(self, j: int) -> dict:
        """Matrix of d_j : term_j -> term_{j-1} as ``{(target, source): entry}``.

        For j = 0 the target is the ring itself, labelled ``()``.
        """
        out = {}
        for I in self.basis(j):
            for k, i in enumerate(I):
                target = I[:k] + I[k + 1:]
                out[target, I] = self.generator(i).scale(_sign(k))
        return out

    def apply(self, j: int, vector: dict) -> dict:
        """d_j applied to ``{subset: coefficient}``."""
        result = {}
        for (target, source), entry in self.differential(j).items():
            c = vector.get(source)
            if c is None:
                continue
            result[target] = result.get(target, self.ctx.zero()) + entry * c
        return {k: v for k, v in result.items() if not v.is_zero()}

    def check_d_squared(self) -> dict:
        """d_{j-1} d_j = 0 on every basis vector, exactly."""
        ok = {}
        for j in range(1, self.top + 1):
            good = True
            for I in self.basis(j):
                image = self.apply(j - 1, self.apply(j, {I: self.ctx.one()}))
                if image:
                    good = False
                    break
            ok[j] = good
        return ok


def build_koszul(n: int, dim_bound: int | None = None) -> KoszulComplex:
    if n < 3:
        raise ConfigError("the Rost model needs n >= 3")
    need = 2 ** (n - 2) - 1
    D = need if dim_bound is None else dim_bound
    if D < need:
        raise TruncationError(f"v_{n - 2} has dimension {need} > dimBound {D}")
    return KoszulComplex(n, D, BPContext(2, D))


# ---------------------------------------------------------------------------
# exactness by dimension strata


@lru_cache(maxsize=None)
def _monos(d: int) -> tuple:
    return tuple(monomials_of_dim(V(2), d))


def _unit_mono(i: int):
    return mono_from_exponents({i: 1})


def _stratum_matrix(gens, j: int, s: int, modulus=None):
    """Rows of d_j restricted to internal dimension s (rows = source basis)."""
    dims = {i: 2**i - 1 for i in gens}
    rows = []
    for I in combinations(gens, j + 1):
        rest = s - sum(dims[i] for i in I)
        for mono in _monos(rest):
            row = {}
            for k, i in enumerate(I):
                target = I[:k] + I[k + 1:]
                if i == 0:
                    key, val = (target, mono), 2 * _sign(k)
                else:
                    key, val = (target, mono_mul(mono, _unit_mono(i))), _sign(k)
                row[key] = row.get(key, 0) + val
            rows.append(row)
    return rows


def _index_columns(rows):
    cols = sorted({c for r in rows for c in r})
    pos = {c: n for n, c in enumerate(cols)}
    return [{pos[c]: v for c, v in r.items()} for r in rows]


def stratum_exactness(gens, strata_bound: int, modulus: int | None = None) -> dict:
    """For each internal dimension s <= strata_bound and each j, check
    dim ker d_j = rank d_{j+1} (d_0 is the augmentation onto the ideal)."""
    gens = tuple(gens)
    top = len(gens) - 1
    failures = []
    checked = 0
    for s in range(strata_bound + 1):
        ranks = {}
        sizes = {}
        for j in range(top + 1):
            rows = _stratum_matrix(gens, j, s)
            sizes[j] = len(rows)
            ranks[j] = sparse_rank(_index_columns(rows), modulus) if rows else 0
        ranks[top + 1] = 0
        for j in range(top + 1):
            checked += 1
            if sizes[j] - ranks[j] != ranks[j + 1]:
                failures.append({"stratum": s, "j": j, "kernel": sizes[j] - ranks[j], "image": ranks[j + 1]})
    return {"strataBound": strata_bound, "checked": checked, "failures": failures, "pass": not failures}


def exactness_report(K: KoszulComplex, strata_bound: int | None = None) -> dict:
    """Exactness over Q of the full complex and of the complex without v_0,
    plus exactness over Z/2 of the complex without v_0."""
    S = min(K.dim_bound, 2 ** (K.n - 2) + 2) if strata_bound is None else strata_bound
    full = stratum_exactness(K.indices, S)
    no_v0 = stratum_exactness(K.indices[1:], S)
    no_v0_mod2 = stratum_exactness(K.indices[1:], S, modulus=2)
    return {
        "strataBound": S,
        "fullOverQ": full,
        "withoutV0OverQ": no_v0,
        "withoutV0OverF2": no_v0_mod2,
        "pass": full["pass"] and no_v0["pass"] and no_v0_mod2["pass"],
    }


# ---------------------------------------------------------------------------
# Tor with the residue field


def _residue(c: GradedPoly) -> int:
    """Image in Z/2 = BP/(2, v_1, v_2, ...)."""
    return int(c.constant_term()) % 2 if c.constant_term() else 0


def tor_with_residue(K: KoszulComplex) -> dict:
    """Ranks of Tor_j(I(2, n-2), Z/2) from the resolution tensored with Z/2."""
    reduced = {}
    ranks = {}
    for j in range(K.top + 1):
        mat = {key: _residue(e) for key, e in K.differential(j).items()} if j > 0 else {}
        mat = {k: v for k, v in mat.items() if v}
        reduced[j] = mat
    mat_rank = {}
    for j in range(K.top + 2):
        m = reduced.get(j, {})
        rows = {}
        for (target, source), v in m.items():
            rows.setdefault(source, {})[target] = v
        cols = sorted({c for r in rows.values() for c in r})
        pos = {c: i for i, c in enumerate(cols)}
        mat_rank[j] = sparse_rank([{pos[c]: v for c, v in r.items()} for r in rows.values()], 2)
    for j in range(K.top + 1):
        ranks[j] = K.rank(j) - mat_rank[j] - mat_rank[j + 1]
    top = max((j for j, r in ranks.items() if r), default=None)
    return {
        "n": K.n,
        "ranks": {str(j): r for j, r in ranks.items()},
        "expected": {str(j): comb(K.n - 1, j + 1) for j in ranks},
        "differentialsVanish": all(not m for m in reduced.values()),
        "topIndex": top,
        "topRank": ranks.get(top) if top is not None else 0,
        "pass": all(ranks[j] == comb(K.n - 1, j + 1) for j in ranks) and top == K.n - 2 and ranks[top] == 1,
    }


# ---------------------------------------------------------------------------
# syzygy codimensions


def syzygy_codim(n: int, subset) -> int:
    return (2 ** (n - 1) - 1) - sum(2**i - 1 for i in subset)


def syzygy_report(n: int) -> dict:
    if n < 3:
        raise ConfigError("the Rost model needs n >= 3")
    top_d = 2 ** (n - 1) - 1
    rows = []
    for size in range(1, n):
        for I in combinations(range(n - 1), size):
            codim = syzygy_codim(n, I)
            rows.append({
                "I": list(I),
                "j": size - 1,
                "codim": codim,
                "inPaperRange": size <= codim <= top_d,
                "geqHomIndex": codim >= size - 1,
            })
    top_formula = syzygy_codim(n, range(n - 1))
    return {
        "n": n,
        "rows": rows,
        "topGenerator": {
            "I": list(range(n - 1)),
            "codimFormula": top_formula,
            "codimStatedInText": n - 2,
            "discrepancy": top_formula != n - 2,
        },
        "pass": all(r["inPaperRange"] for r in rows),
    }


# ---------------------------------------------------------------------------
# relations and the descent step


@dataclass(frozen=True)
class FormalRelation:
    """``alpha = sum_j z_j (x) u_j`` over cycle symbols of a common codimension r."""

    codim: int
    coeffs: tuple  # ((symbol, GradedPoly), ...) in support order
    m: int

    @classmethod
    def build(cls, codim: int, coeffs: dict, m: int | None = None) -> "FormalRelation":
        if codim <= 0:
            raise ValueError("support cycles need positive codimension")
        items = tuple(coeffs.items())
        if not items:
            raise ValueError("empty support")
        dims = {u.homogeneous_dim() for _, u in items if not u.is_zero()}
        if None in dims or len(dims) > 1:
            raise ValueError("coefficients must be homogeneous of one dimension")
        levels = [filtration_level(u) for _, u in items if not u.is_zero()]
        level = min(levels) if levels else None
        if m is None:
            m = 0 if level is None else level
        if level is not None and level < m:
            raise ValueError(f"coefficients are not all in I(p)^{m}")
        return cls(codim, items, m)

    @property
    def support(self) -> tuple:
        return tuple(s for s, _ in self.coeffs)

    @property
    def dim(self):
        for _, u in self.coeffs:
            if not u.is_zero():
                return u.homogeneous_dim()
        return None

    @property
    def codimension(self):
        d = self.dim
        return None if d is None else self.codim - d

    def coefficient(self, symbol) -> GradedPoly:
        return dict(self.coeffs)[symbol]


class CoordinateIdealOracle:
    """Relations over a fixed support where the relations at each symbol are
    ``J_z * z`` for an ideal J_z generated by some of ``v_0 = p, v_1, ...``.

    Membership in such ideals is decided exactly: kill the listed v_i and,
    if v_0 is listed, ask for divisibility by p.
    """

    def __init__(self, prime: int, ideals: dict):
        self.prime = prime
        self.ideals = {s: tuple(sorted(set(gs))) for s, gs in ideals.items()}

    def in_ideal(self, symbol, u: GradedPoly) -> bool:
        gens = self.ideals.get(symbol, ())
        killed = {i for i in gens if i > 0}
        rest = {mono: c for mono, c in u.terms.items() if not any(mono[i - 1] for i in killed if i - 1 < len(mono))}
        if 0 in gens:
            return all(p_valuation(c, self.prime) >= 1 for c in rest.values())
        return not rest

    def is_relation(self, coeffs: dict) -> bool:
        return all(self.in_ideal(s, u) for s, u in coeffs.items())


def rost_oracle(n: int) -> CoordinateIdealOracle:
    """Support {e0}; relations I(2, n-2) e0 with I(2, n-2) = (2, v_1, ..., v_{n-2})."""
    return CoordinateIdealOracle(2, {"e0": range(0, n - 1)})


def rost_relation(n: int, u: GradedPoly, m: int | None = None) -> FormalRelation:
    return FormalRelation.build(2 ** (n - 1) - 1, {"e0": u}, m)


def descent_step(sctx: SteenrodContext, alpha: FormalRelation, oracle) -> dict:
    """One step ``alpha = p alpha_1 + beta_1 mod I(p)^(m+1)``.

    For z of codimension r and u of dimension d (c = r - d <= 0):
    ``St(z u)_{c(p-1)} = eps^r St(u)_{-d(p-1)} = -eps^r ([p] Phi(u))_{-d(p-1)}``,
    and modulo I(p)^(m+1) only ``[p] = sum_l v_l t^(p^l - 1)`` matters, so

        alpha_1 = -Phi(u)_{-d(p-1)},   beta_1 = -sum_{l>=1} v_l Phi(u)_{-d(p-1)-(p^l-1)}.
    """
    ctx = sctx.ctx
    p = sctx.prime
    r = alpha.codim
    d = alpha.dim
    m = alpha.m
    coeffs = dict(alpha.coeffs)
    zero = ctx.zero()
    if d is None:
        return _descent_report(alpha, {s: zero for s in coeffs}, {s: zero for s in coeffs}, True, True, True, True, True, [])
    c = r - d
    if c > 0:
        raise ValueError(f"descent needs codimension r - d <= 0, got {c}")
    if not oracle.is_relation(coeffs):
        raise ValueError("input is not a relation for the given presentation")
    eps_r = Fraction(sctx.epsilon) ** r
    cut = -r * (p - 1)
    base = -d * (p - 1)
    alpha1, beta1, sanity = {}, {}, {}
    oracle_ok = True
    unrecognized = []
    for s, u in coeffs.items():
        phi = sctx.phi(u) if not u.is_zero() else None
        comp = (lambda k: phi.coefficient(k)) if phi is not None else (lambda k: zero)
        # the shifted, cut-off Phi(alpha) components must themselves be relations
        if phi is not None:
            for k in sorted(phi.coeffs):
                if k <= cut and not oracle.in_ideal(s, phi.coeffs[k].scale(eps_r)):
                    oracle_ok = False
                    unrecognized.append({"symbol": s, "tDegree": k + r * (p - 1)})
        alpha1[s] = -comp(base)
        parts = []
        l = 1
        while p**l - 1 <= d and l <= ctx.kmax:
            parts.append(ctx.v(l) * comp(base - (p**l - 1)))
            l += 1
        beta1[s] = -GradedPoly.sum_many(parts, zero) if parts else zero
        st = sctx.steenrod(u, window=(-p * d, 0)) if not u.is_zero() else None
        st_comp = st.coefficient(base).scale(eps_r) if st is not None else zero
        # eps = -1 mod p, so the component is (-1)^r alpha mod I(p)^(m+1)
        sanity[s] = ideal_membership(st_comp - u.scale((-1) ** r), m + 1, p)
    supported = set(alpha1) | set(beta1) <= set(coeffs)
    beta_ok = all(ideal_membership(b, m, p) for b in beta1.values())
    congruence = all(
        ideal_membership(coeffs[s] - alpha1[s].scale(p) - beta1[s], m + 1, p) for s in coeffs
    )
    return _descent_report(alpha, alpha1, beta1, supported, beta_ok, congruence, oracle_ok, all(sanity.values()), unrecognized)


def _descent_report(alpha, alpha1, beta1, supported, beta_ok, congruence, oracle_ok, sanity, unrecognized) -> dict:
    from .serialize import poly_to_json

    return {
        "check": "descent",
        "codim": alpha.codim,
        "dim": alpha.dim,
        "m": alpha.m,
        "alpha": {s: poly_to_json(u) for s, u in alpha.coeffs},
        "alpha1": {s: poly_to_json(u) for s, u in sorted(alpha1.items())},
        "beta1": {s: poly_to_json(u) for s, u in sorted(beta1.items())},
        "supportPreserved": supported,
        "beta1InIm": beta_ok,
        "congruenceModImPlus1": congruence,
        "oracleConsistent": oracle_ok,
        "oracleUnrecognized": unrecognized,
        "stComponentIsMinusAlpha": sanity,
        "pass": supported and beta_ok and congruence,
    }


__all__ = [
    "KoszulComplex",
    "build_koszul",
    "sparse_rank",
    "stratum_exactness",
    "exactness_report",
    "tor_with_residue",
    "syzygy_codim",
    "syzygy_report",
    "FormalRelation",
    "CoordinateIdealOracle",
    "rost_oracle",
    "rost_relation",
    "descent_step",
]
