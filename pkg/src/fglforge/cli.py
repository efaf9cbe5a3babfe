"""Command line front end: ``fglforge {fgl,bp,ops,verify,koszul} ...``.

Exit codes: 0 success (every check passed), 1 a check failed, 2 bad
configuration (unknown prime, insufficient truncation, malformed input).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, FGLForgeError, TruncationError
from .fgl import characteristic_numbers, log_coefficients, universal_fgl
from .resolutions import build_koszul, descent_step, exactness_report, rost_oracle, rost_relation, syzygy_report, tor_with_residue
from .ring import format_rational, mono_pairs
from .serialize import dumps, poly_from_json, poly_to_json, tlaurent_to_json
from .verify import (
    DEFAULTS,
    bp_context,
    default_plan,
    load_plan,
    parse_element,
    run_check,
    run_plan,
    steenrod_context,
    write_report,
)


def _emit(obj):
    sys.stdout.write(dumps(obj))


def _series_json(series) -> dict:
    return {
        "xBound": series.x_bound,
        "coeffs": [
            {"exps": list(e), "coeff": poly_to_json(c)} for e, c in series.items_by_degree()
        ],
    }


def _reps(text):
    if text is None:
        return None
    return tuple(int(v) for v in text.split(",") if v.strip())


# ---------------------------------------------------------------------------
# fgl


def cmd_fgl_universal(args):
    law = universal_fgl(args.xbound, args.dimbound, verify_assoc=args.verify_assoc)
    report = {
        "kind": law.kind,
        "xBound": args.xbound,
        "dimBound": args.dimbound,
        "unit": law.check_unit(),
        "commutative": law.check_commutative(),
    }
    if args.verify_assoc:
        report["associative"] = True
    if args.json:
        report["F"] = _series_json(law.F)
        _emit(report)
    else:
        print(law.F)
    return 0


def cmd_fgl_log(args):
    logs = log_coefficients(args.dimbound)
    if args.json:
        _emit({"dimBound": args.dimbound, "m": {str(n): poly_to_json(c) for n, c in logs.items()}})
    else:
        for n, c in logs.items():
            print(f"m{n} = {c}")
    return 0


def cmd_fgl_charnums(args):
    c = poly_from_json(args.element)
    nums = characteristic_numbers(c, args.dim)
    _emit({
        "dim": nums.dim,
        "integral": nums.integral,
        "numbers": [
            {"monomial": {str(i): e for i, e in mono_pairs(m)}, "value": format_rational(v)} for m, v in nums.numbers.items()
        ],
    })
    return 0


# ---------------------------------------------------------------------------
# bp


def cmd_bp_generators(args):
    ctx = bp_context(args.prime, args.dimbound)
    rows = []
    for k in range(1, ctx.kmax + 1):
        rows.append({
            "k": k,
            "dim": args.prime**k - 1,
            "lambda": poly_to_json(ctx.lambda_v[k]),
            "bCoordinates": poly_to_json(ctx.v_in_b[k]),
            "nuElement": ctx.nu_element_report(k)["pass"],
        })
    if args.json:
        _emit({"prime": args.prime, "dimBound": args.dimbound, "generators": rows})
    else:
        for k in range(1, ctx.kmax + 1):
            print(f"v{k} = {ctx.v_in_b[k]}")
    return 0


def cmd_bp_pseries(args):
    ctx = bp_context(args.prime, args.dimbound)
    value = ctx.p_series if args.leq is None else ctx.p_series_leq(args.leq)
    if args.json:
        _emit(tlaurent_to_json(value))
    else:
        print(value)
    return 0


def cmd_bp_member(args):
    x = poly_from_json(args.element)
    from .bp import filtration_level, ideal_membership

    _emit({"power": args.power, "member": ideal_membership(x, args.power), "level": filtration_level(x)})
    return 0


# ---------------------------------------------------------------------------
# ops


def cmd_ops_steenrod(args):
    sctx = steenrod_context(args.prime, args.dimbound, _reps(args.reps))
    x = parse_element(args.element, sctx.ctx)
    window = None
    if args.window:
        lo, hi = (int(v) for v in args.window.split(","))
        window = (lo, hi)
    _emit(tlaurent_to_json(sctx.steenrod(x, window)))
    return 0


def cmd_ops_phi(args):
    sctx = steenrod_context(args.prime, args.dimbound, _reps(args.reps))
    x = parse_element(args.element, sctx.ctx)
    _emit(tlaurent_to_json(sctx.phi(x)))
    return 0


# ---------------------------------------------------------------------------
# verify


def _single(spec, args):
    result = run_check(spec, timings=args.timings)
    _emit(result)
    return 0 if result["pass"] else 1


def cmd_verify_prop31(args):
    return _single({"name": "prop31", "prime": args.prime, "dimBound": args.dimbound, "monomial": args.monomial}, args)


def cmd_verify_cor32(args):
    spec = {"name": "cor32", "prime": args.prime, "dimBound": args.dimbound, "element": args.element}
    if args.m is not None:
        spec["m"] = args.m
    return _single(spec, args)


def cmd_verify_prop33(args):
    return _single({"name": "prop33", "prime": args.prime, "dimBound": args.dimbound, "m": args.m, "count": args.count, "seed": args.seed}, args)


def cmd_verify_coset(args):
    return _single({
        "name": "coset-independence", "prime": args.prime, "dimBound": args.dimbound,
        "reps1": args.reps1, "reps2": args.reps2, "element": args.element,
    }, args)


def cmd_verify_twisted(args):
    return _single({"name": "twisted-log", "prime": args.prime, "dimBound": args.dimbound, "xBound": args.xbound}, args)


def cmd_verify_all(args):
    plan = default_plan(args.prime, args.dimbound, args.xbound)
    return _run_and_write(plan, args)


def cmd_verify_plan(args):
    plan = load_plan(args.plan)
    return _run_and_write(plan, args)


def _run_and_write(plan, args):
    report, code = run_plan(plan, args.jobs, timings=args.timings)
    text = write_report(report, args.out)
    if not args.out:
        sys.stdout.write(text)
    summary = report["summary"]
    print(f"{summary['passed']}/{summary['total']} checks passed", file=sys.stderr)
    for name in summary["failed"]:
        print(f"FAILED {name}", file=sys.stderr)
    for msg in summary["configErrors"]:
        print(f"CONFIG {msg}", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# koszul


def cmd_koszul_rost(args):
    K = build_koszul(args.n, args.dimbound)
    report = {"n": args.n, "dimBound": K.dim_bound, "ranks": {str(j): K.rank(j) for j in range(K.top + 1)}}
    report["dSquaredZero"] = all(K.check_d_squared().values())
    if args.tor:
        report["tor"] = tor_with_residue(K)
    if args.syzygy_report:
        report["syzygy"] = syzygy_report(args.n)
    if args.exactness:
        report["exactness"] = exactness_report(K, args.strata_bound)
    if args.json:
        _emit(report)
    else:
        print(f"n={args.n} ranks {report['ranks']} d^2=0: {report['dSquaredZero']}")
        if args.syzygy_report:
            for row in report["syzygy"]["rows"]:
                print(f"  I={row['I']} j={row['j']} codim={row['codim']} inRange={row['inPaperRange']}")
            top = report["syzygy"]["topGenerator"]
            print(f"  top generator codim {top['codimFormula']} (text says {top['codimStatedInText']}; discrepancy={top['discrepancy']})")
        if args.tor:
            print(f"  Tor ranks over Z/2: {report['tor']['ranks']}")
    ok = report["dSquaredZero"] and all(report[k]["pass"] for k in ("tor", "syzygy", "exactness") if k in report)
    return 0 if ok else 1


def _relation_input(text: str):
    """``--relation``: an element (text or polynomial JSON), or
    ``{"element": ..., "m": ...}`` / ``{"coeffs": {"e0": ...}, "m": ...}``."""
    if not text.strip().startswith("{"):
        return text, None
    data = json.loads(text)
    if "alphabet" in data:
        return data, None
    if "coeffs" in data:
        coeffs = data["coeffs"]
        if set(coeffs) != {"e0"}:
            raise ConfigError("the Rost-model support is {e0}")
        return coeffs["e0"], data.get("m")
    if "element" in data:
        return data["element"], data.get("m")
    raise ConfigError("relation JSON needs 'element', 'coeffs' or a polynomial")


def cmd_koszul_descent(args):
    if args.prime != 2:
        raise ConfigError("the Rost-model presentation is at p = 2")
    sctx = steenrod_context(2, args.dimbound)
    element, m = _relation_input(args.relation)
    alpha = rost_relation(args.n, parse_element(element, sctx.ctx), m)
    report = descent_step(sctx, alpha, rost_oracle(args.n))
    _emit(report)
    return 0 if report["pass"] else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fglforge", description="Exact computations with formal group laws, BP and cobordism operations.")
    sub = ap.add_subparsers(dest="group", required=True)

    def prime_bound(p, dimbound=DEFAULTS["dimBound"]):
        p.add_argument("--prime", type=int, default=DEFAULTS["prime"])
        p.add_argument("--dimbound", type=int, default=dimbound)

    # fgl
    fgl = sub.add_parser("fgl", help="universal formal group law").add_subparsers(dest="cmd", required=True)
    p = fgl.add_parser("universal")
    p.add_argument("--xbound", type=int, default=8)
    p.add_argument("--dimbound", type=int, default=8)
    p.add_argument("--verify-assoc", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fgl_universal)
    p = fgl.add_parser("log")
    p.add_argument("--dimbound", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fgl_log)
    p = fgl.add_parser("charnums")
    p.add_argument("--element", required=True, help="b-alphabet polynomial as JSON")
    p.add_argument("--dim", type=int, default=None)
    p.set_defaults(func=cmd_fgl_charnums)

    # bp
    bp = sub.add_parser("bp", help="Brown-Peterson coefficients").add_subparsers(dest="cmd", required=True)
    p = bp.add_parser("generators")
    prime_bound(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bp_generators)
    p = bp.add_parser("p-series")
    prime_bound(p)
    p.add_argument("--leq", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bp_pseries)
    p = bp.add_parser("member")
    p.add_argument("--element", required=True, help="v-alphabet polynomial as JSON")
    p.add_argument("--power", type=int, required=True)
    p.set_defaults(func=cmd_bp_member)

    # ops
    ops = sub.add_parser("ops", help="Steenrod and symmetric operations").add_subparsers(dest="cmd", required=True)
    p = ops.add_parser("steenrod")
    prime_bound(p)
    p.add_argument("--element", required=True, help="JSON, or text such as v1 or 2*v1^2")
    p.add_argument("--reps", default=None, help="coset representatives, e.g. 1,-1")
    p.add_argument("--window", default=None, help="t-window lo,hi")
    p.set_defaults(func=cmd_ops_steenrod)
    p = ops.add_parser("phi")
    prime_bound(p)
    p.add_argument("--element", required=True)
    p.add_argument("--reps", default=None)
    p.set_defaults(func=cmd_ops_phi)

    # verify
    ver = sub.add_parser("verify", help="verification checks").add_subparsers(dest="cmd", required=True)

    def common(p):
        prime_bound(p)
        p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte determinism)")

    p = ver.add_parser("prop31")
    common(p)
    p.add_argument("--monomial", default="1")
    p.set_defaults(func=cmd_verify_prop31)
    p = ver.add_parser("cor32")
    common(p)
    p.add_argument("--element", default="v1")
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_verify_cor32)
    p = ver.add_parser("prop33")
    common(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_prop33)
    p = ver.add_parser("coset-independence")
    common(p)
    p.add_argument("--reps1", required=True)
    p.add_argument("--reps2", required=True)
    p.add_argument("--element", default="v1")
    p.set_defaults(func=cmd_verify_coset)
    p = ver.add_parser("twisted-log")
    common(p)
    p.add_argument("--xbound", type=int, default=6)
    p.set_defaults(func=cmd_verify_twisted, dimbound=6)
    for name, func in (("all", cmd_verify_all), ("plan", cmd_verify_plan)):
        p = ver.add_parser(name)
        if name == "all":
            common(p)
            p.add_argument("--xbound", type=int, default=DEFAULTS["xBound"])
        else:
            p.add_argument("plan")
            p.add_argument("--timings", action="store_true")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $FGLFORGE_JOBS or 1)")
        p.add_argument("--out", default=None)
        p.set_defaults(func=func)

    # koszul
    kz = sub.add_parser("koszul", help="Rost-motive resolutions").add_subparsers(dest="cmd", required=True)
    p = kz.add_parser("rost")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dimbound", type=int, default=None)
    p.add_argument("--tor", action="store_true")
    p.add_argument("--syzygy-report", action="store_true")
    p.add_argument("--exactness", action="store_true")
    p.add_argument("--strata-bound", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_koszul_rost)
    p = kz.add_parser("descent")
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--dimbound", type=int, default=DEFAULTS["dimBound"])
    p.add_argument("--relation", required=True, help='element such as "2*v2", or {"element": ..., "m": ...}')
    p.set_defaults(func=cmd_koszul_descent)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FGLForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
