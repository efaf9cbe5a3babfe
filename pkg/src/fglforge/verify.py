"""Named checks, verification plans and the ``verify all`` suite.

A plan is a JSON object::

    {"jobs": 2, "checks": [{"name": "prop31", "prime": 2, "dimBound": 10, "monomial": [1, 1]}, ...]}

Each check returns a report with a boolean ``pass``.  Reports are assembled in
plan order, so identical plans give identical bytes (timings are only added
on request).
"""

from __future__ import annotations

import json
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from pathlib import Path

from .bp import BPContext, tlaurent_membership
from .errors import ConfigError, FGLForgeError, TruncationError
from .fgl import characteristic_numbers, cp_class, universal_fgl
from .ops import (
    SteenrodContext,
    default_reps,
    sample_ideal_power,
    twisted_log_check,
    verify_concentration,
    verify_cor_stid,
    verify_coset_independence,
    verify_phi_additivity,
    verify_prop_stp,
    verify_prop_symim,
)
from .resolutions import build_koszul, descent_step, exactness_report, rost_oracle, rost_relation, syzygy_report, tor_with_residue
from .ring import GradedPoly, is_prime
from .serialize import dumps, poly_from_json

DEFAULTS = {"prime": 2, "dimBound": 10, "xBound": 12}

OK, FAILED, CONFIG = 0, 1, 2


# ---------------------------------------------------------------------------
# shared contexts (cached per process)


@lru_cache(maxsize=16)
def bp_context(prime: int, dim_bound: int) -> BPContext:
    if not is_prime(prime):
        raise ConfigError(f"{prime} is not a prime")
    return BPContext(prime, dim_bound)


@lru_cache(maxsize=16)
def steenrod_context(prime: int, dim_bound: int, reps: tuple | None = None) -> SteenrodContext:
    return SteenrodContext(bp_context(prime, dim_bound), reps)


# ---------------------------------------------------------------------------
# element parsing

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_element(text, ctx: BPContext) -> GradedPoly:
    """A BP element from JSON or from text such as ``v1``, ``2*v1^2 - v2`` or ``4``.

    ``v0`` stands for the prime.
    """
    if isinstance(text, dict):
        x = poly_from_json(text)
    elif isinstance(text, str) and text.strip().startswith("{"):
        x = poly_from_json(text)
    else:
        x = _parse_text(str(text), ctx)
    if x.alphabet != ctx.alphabet:
        raise ConfigError(f"element is over {x.alphabet}, expected {ctx.alphabet}")
    if x.max_dim() is not None and x.max_dim() > ctx.dim_bound:
        raise TruncationError(f"element has dimension {x.max_dim()} > dimBound {ctx.dim_bound}")
    return x.with_bound(ctx.dim_bound)


def _parse_text(text: str, ctx: BPContext) -> GradedPoly:
    text = text.replace(" ", "")
    if not text:
        raise ConfigError("empty element")
    terms = []
    pos = 0
    for match in _TERM.finditer(text):
        if match.start() != pos:
            raise ConfigError(f"cannot parse element {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = Fraction(sign)
        exps = {}
        for factor in match.group(2).split("*"):
            m = re.fullmatch(r"v(\d+)(?:\^(\d+))?", factor)
            if m:
                i, e = int(m.group(1)), int(m.group(2) or 1)
                if i == 0:
                    coeff *= ctx.prime**e
                else:
                    exps[i] = exps.get(i, 0) + e
                continue
            try:
                coeff *= Fraction(factor)
            except ValueError as exc:
                raise ConfigError(f"cannot parse factor {factor!r}") from exc
        terms.append((coeff, exps))
    if pos != len(text):
        raise ConfigError(f"cannot parse element {text!r}")
    for _, exps in terms:
        for i in exps:
            if i > ctx.kmax:
                raise TruncationError(f"v_{i} is above dimBound {ctx.dim_bound}")
    return GradedPoly.from_exponents(ctx.alphabet, terms, ctx.dim_bound)


def _ints(value) -> list:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    return [int(v) for v in value]


# ---------------------------------------------------------------------------
# checks


def check_fgl_axioms(xBound: int = 8, dimBound: int = 8, verifyAssoc: bool = True) -> dict:
    law = universal_fgl(xBound, dimBound)
    unit = law.check_unit()
    comm = law.check_commutative()
    assoc = law.check_associative() if verifyAssoc else None
    return {
        "xBound": xBound,
        "dimBound": dimBound,
        "unit": unit,
        "commutative": comm,
        "associative": assoc,
        "a11": str(law.coefficient(1, 1)),
        "pass": unit and comm and assoc is not False,
    }


def check_integrality(dimBound: int = 12) -> dict:
    law = universal_fgl(dimBound + 1, dimBound)
    coeffs_ok = all(c.is_integral() for c in law.F.coeffs.values())
    classes = {}
    for n in range(1, dimBound + 1):
        nums = characteristic_numbers(cp_class(n, dimBound).homogeneous_part(n), n)
        classes[str(n)] = nums.integral
    return {"dimBound": dimBound, "fglCoefficientsIntegral": coeffs_ok, "cpClassesIntegral": classes, "pass": coeffs_ok and all(classes.values())}


def check_eq1(prime: int, dimBound: int) -> dict:
    ctx = bp_context(prime, dimBound)
    diff = ctx.p_series - ctx.p_series_leq(ctx.kmax)
    member = tlaurent_membership(diff, 2)
    return {
        "prime": prime,
        "dimBound": dimBound,
        "generators": ctx.kmax,
        "constantTerm": str(ctx.p_series.coefficient(0)),
        "membership": {str(k): v for k, v in member.items()},
        "pass": all(member.values()) and ctx.p_series.coefficient(0) == ctx.v(0),
    }


def check_nu_elements(prime: int, dimBound: int, kmax: int | None = None) -> dict:
    ctx = bp_context(prime, dimBound)
    top = ctx.kmax if kmax is None else kmax
    if top > ctx.kmax:
        raise TruncationError(f"v_{top} is above dimBound {dimBound}")
    rows = [ctx.nu_element_report(k) for k in range(1, top + 1)]
    return {"prime": prime, "dimBound": dimBound, "rows": rows, "pass": all(r["pass"] for r in rows)}


def check_prop31(prime: int, dimBound: int, monomial) -> dict:
    return verify_prop_stp(steenrod_context(prime, dimBound), _ints(monomial))


def check_cor32(prime: int, dimBound: int, element, m: int | None = None) -> dict:
    ctx = bp_context(prime, dimBound)
    return verify_cor_stid(steenrod_context(prime, dimBound), parse_element(element, ctx), m)


def check_prop33(prime: int, dimBound: int, m: int, count: int = 10, seed: int = 0) -> dict:
    ctx = bp_context(prime, dimBound)
    samples = sample_ideal_power(ctx, m + 1, count, seed)
    if len(samples) < count:
        raise ConfigError(f"only {len(samples)} samples of I({prime})^{m + 1} fit dimBound {dimBound}")
    return verify_prop_symim(steenrod_context(prime, dimBound), samples, m)


def check_phi_additivity(prime: int, dimBound: int, count: int = 20, seed: int = 0) -> dict:
    ctx = bp_context(prime, dimBound)
    pool = sample_ideal_power(ctx, 0, 4 * count, seed)
    by_dim = {}
    for x in pool:
        by_dim.setdefault(x.homogeneous_dim(), []).append(x)
    pairs = []
    dims = sorted(d for d, xs in by_dim.items() if len(xs) >= 2)
    i = 0
    while len(pairs) < count and dims:
        xs = by_dim[dims[i % len(dims)]]
        k = (i // len(dims)) % (len(xs) - 1)
        pairs.append((xs[k], xs[k + 1]))
        i += 1
    return verify_phi_additivity(steenrod_context(prime, dimBound), pairs)


def check_twisted_log(prime: int, dimBound: int, xBound: int = 6) -> dict:
    return twisted_log_check(bp_context(prime, dimBound), xBound)


def check_coset_independence(prime: int, dimBound: int, reps1, reps2, element) -> dict:
    ctx = bp_context(prime, dimBound)
    return verify_coset_independence(ctx, _ints(reps1), _ints(reps2), parse_element(element, ctx))


def check_st_concentration(prime: int, dimBound: int, element) -> dict:
    ctx = bp_context(prime, dimBound)
    return verify_concentration(steenrod_context(prime, dimBound), parse_element(element, ctx))


def check_koszul(n: int, strataBound: int | None = None) -> dict:
    K = build_koszul(n)
    dd = K.check_d_squared()
    exact = exactness_report(K, strataBound)
    tor = tor_with_residue(K)
    syz = syzygy_report(n)
    ranks_ok = all(K.rank(j) == len(K.basis(j)) for j in range(K.top + 1))
    return {
        "n": n,
        "dSquaredZero": all(dd.values()),
        "exactness": exact,
        "tor": tor,
        "syzygy": {"rowsInRange": syz["pass"], "rows": len(syz["rows"]), "topGenerator": syz["topGenerator"]},
        "discrepancyFlagged": syz["topGenerator"]["discrepancy"],
        "pass": all(dd.values()) and exact["pass"] and tor["pass"] and syz["pass"] and ranks_ok,
    }


def check_descent(n: int, dimBound: int, elements, prime: int = 2) -> dict:
    if prime != 2:
        raise ConfigError("the Rost-model presentation is at p = 2")
    ctx = bp_context(2, dimBound)
    sctx = steenrod_context(2, dimBound)
    oracle = rost_oracle(n)
    rows = [descent_step(sctx, rost_relation(n, parse_element(e, ctx)), oracle) for e in elements]
    return {"n": n, "dimBound": dimBound, "steps": rows, "pass": all(r["pass"] for r in rows)}


CHECKS = {
    "fgl-axioms": check_fgl_axioms,
    "integrality": check_integrality,
    "eq1": check_eq1,
    "nu-elements": check_nu_elements,
    "prop31": check_prop31,
    "cor32": check_cor32,
    "prop33": check_prop33,
    "phi-additivity": check_phi_additivity,
    "twisted-log": check_twisted_log,
    "coset-independence": check_coset_independence,
    "st-concentration": check_st_concentration,
    "koszul": check_koszul,
    "descent": check_descent,
}

# descent inputs for the Rost model at n = 3: dimension >= 3 so that r - d <= 0
ROST_DESCENT_ELEMENTS = ["2*v2", "v1^3", "2*v1^3", "v1^3 + 2*v2", "4*v2", "v1*v2", "2*v1*v2", "v1^4"]


# ---------------------------------------------------------------------------
# plans


def check_label(spec: dict) -> str:
    params = ",".join(f"{k}={_compact(v)}" for k, v in spec.items() if k != "name")
    return f"{spec['name']}[{params}]"


def _compact(v) -> str:
    if isinstance(v, (list, tuple)):
        return ";".join(_compact(x) for x in v)
    return str(v)


def run_check(spec: dict, timings: bool = False) -> dict:
    """Run one check; configuration problems propagate as ConfigError/TruncationError."""
    spec = dict(spec)
    name = spec.pop("name", None)
    if name not in CHECKS:
        raise ConfigError(f"unknown check {name!r}")
    start = time.perf_counter()
    try:
        result = CHECKS[name](**spec)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {name}: {exc}") from exc
    except (ConfigError, TruncationError):
        raise
    except (FGLForgeError, ValueError) as exc:
        result = {"error": f"{type(exc).__name__}: {exc}", "pass": False}
    out = {"check": check_label({"name": name, **spec}), "name": name, "params": spec, "pass": bool(result["pass"]), "result": result}
    if timings:
        out["seconds"] = round(time.perf_counter() - start, 3)
    return out


def _run_guarded(args):
    spec, timings = args
    try:
        return run_check(spec, timings)
    except (ConfigError, TruncationError) as exc:
        return {"check": check_label(spec), "configError": str(exc)}


def resolve_jobs(jobs) -> int:
    if jobs is None:
        jobs = os.environ.get("FGLFORGE_JOBS", 1)
    try:
        jobs = int(jobs)
    except ValueError as exc:
        raise ConfigError(f"jobs must be an integer, got {jobs!r}") from exc
    if jobs < 1:
        raise ConfigError("jobs must be >= 1")
    return jobs


def run_plan(plan: dict, jobs=None, timings: bool = False) -> tuple:
    """Run every check of ``plan``; returns ``(report, exit_code)``."""
    if not isinstance(plan, dict):
        raise ConfigError("a plan is a JSON object")
    checks = plan.get("checks", [])
    if not isinstance(checks, list) or not all(isinstance(c, dict) and "name" in c for c in checks):
        raise ConfigError("plan.checks must be a list of objects with a name")
    jobs = resolve_jobs(jobs if jobs is not None else plan.get("jobs"))
    tasks = [(c, timings) for c in checks]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_guarded, tasks))
    else:
        results = [_run_guarded(t) for t in tasks]
    config_errors = [r for r in results if "configError" in r]
    report = {
        "defaults": DEFAULTS,
        "plan": {k: v for k, v in plan.items() if k not in ("checks", "jobs")},
        "checks": results,
        "summary": {
            "total": len(results),
            "passed": sum(1 for r in results if r.get("pass") is True),
            "failed": [r["check"] for r in results if r.get("pass") is False],
            "configErrors": [f"{r['check']}: {r['configError']}" for r in config_errors],
        },
    }
    if config_errors:
        code = CONFIG
    elif report["summary"]["failed"]:
        code = FAILED
    else:
        code = OK
    report["summary"]["pass"] = code == OK
    return report, code


def load_plan(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read plan {path}: {exc}") from exc


def _fits(text: str, ctx, factor: int) -> bool:
    """Whether ``text`` names a nonzero element with ``factor * dim <= dimBound``."""
    try:
        x = _parse_text(text, ctx)
    except TruncationError:
        return False
    return not x.is_zero() and factor * x.max_dim() <= ctx.dim_bound


def default_plan(prime: int = 2, dim_bound: int = 10, x_bound: int = 12) -> dict:
    """The ``verify all`` suite for one prime and bound."""
    if not is_prime(prime):
        raise ConfigError(f"{prime} is not a prime")
    ctx = BPContext(prime, dim_bound)
    p, D = prime, dim_bound
    checks = [
        {"name": "fgl-axioms", "xBound": min(8, x_bound), "dimBound": min(8, D)},
        {"name": "integrality", "dimBound": min(12, max(D, 1))},
        {"name": "eq1", "prime": p, "dimBound": D},
        {"name": "nu-elements", "prime": p, "dimBound": D},
    ]
    # every v-monomial of up to three factors whose St fits the bound
    for size in (1, 2, 3):
        for ks in combinations_with_replacement(range(1, ctx.kmax + 1), size):
            d = sum(p**k - 1 for k in ks)
            if p * d + p - 1 <= D:
                checks.append({"name": "prop31", "prime": p, "dimBound": D, "monomial": list(ks)})
    for element in ["v0", "v1", "v1^2", "v0*v1"]:
        x = _parse_text(element, ctx) if ctx.kmax >= 1 else None
        if x is not None and not x.is_zero() and p * x.homogeneous_dim() <= D:
            checks.append({"name": "cor32", "prime": p, "dimBound": D, "element": element})
    for m in (1, 2):
        checks.append({"name": "prop33", "prime": p, "dimBound": D, "m": m, "count": 10, "seed": 100 * p + m})
    checks.append({"name": "phi-additivity", "prime": p, "dimBound": D, "count": 20, "seed": p})
    checks.append({"name": "twisted-log", "prime": p, "dimBound": min(D, 6), "xBound": min(6, x_bound)})
    # shift the largest representative by -p: a different lift of the same residues
    alt = [i - p if i == p - 1 else i for i in default_reps(p)] if p > 2 else [3]
    # St(v1) needs room for t-degrees down to -p(p-1) - (p-1)
    if ctx.kmax >= 1 and p * p - 1 <= D:
        checks.append({"name": "coset-independence", "prime": p, "dimBound": D, "reps1": list(default_reps(p)), "reps2": alt, "element": "v1"})
        checks.append({"name": "st-concentration", "prime": p, "dimBound": D, "element": "v0*v1"})
    if p == 2:
        for n in range(3, 9):
            checks.append({"name": "koszul", "n": n})
        usable = [e for e in ROST_DESCENT_ELEMENTS if _fits(e, ctx, 2)]
        if usable:
            checks.append({"name": "descent", "n": 3, "dimBound": D, "elements": usable})
    return {"suite": "all", "prime": p, "dimBound": D, "xBound": x_bound, "checks": checks}


def write_report(report: dict, out=None) -> str:
    text = dumps(report)
    if out:
        Path(out).write_text(text)
    return text


__all__ = [
    "CHECKS",
    "DEFAULTS",
    "run_check",
    "run_plan",
    "load_plan",
    "default_plan",
    "write_report",
    "parse_element",
    "resolve_jobs",
    "bp_context",
    "steenrod_context",
]
