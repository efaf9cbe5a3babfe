"""JSON forms of the value types.

GradedPoly::

    {"alphabet": "v", "prime": 2, "dimBound": 10,
     "terms": [{"coeff": "3/1", "exps": {"1": 2}}, ...]}

with terms in canonical (graded, then lexicographic) order.  TLaurent adds
``tlow``, ``thigh`` and ``coeffs`` keyed by the t-degree as a string.
"""

from __future__ import annotations

import json

from .errors import ConfigError
from .ring import B, M, Alphabet, GradedPoly, TLaurent, V, format_rational, mono_from_exponents, mono_pairs, parse_rational


def alphabet_from_json(kind: str, prime) -> Alphabet:
    if kind == "b":
        return B
    if kind == "m":
        return M
    if kind == "v":
        if prime is None:
            raise ConfigError("v alphabet needs a prime")
        return V(int(prime))
    raise ConfigError(f"unknown alphabet {kind!r}")


def poly_to_json(x: GradedPoly) -> dict:
    return {
        "alphabet": x.alphabet.kind,
        "prime": x.alphabet.prime,
        "dimBound": x.dim_bound,
        "terms": [
            {"coeff": format_rational(c), "exps": {str(i): e for i, e in mono_pairs(mono)}}
            for mono, c in x.sorted_terms()
        ],
    }


def poly_from_json(data) -> GradedPoly:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        alphabet = alphabet_from_json(data["alphabet"], data.get("prime"))
        terms = {}
        for term in data.get("terms", []):
            mono = mono_from_exponents({int(i): int(e) for i, e in term.get("exps", {}).items()})
            terms[mono] = terms.get(mono, 0) + parse_rational(term["coeff"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"malformed polynomial JSON: {exc}") from exc
    return GradedPoly(alphabet, terms, data.get("dimBound"))


def tlaurent_to_json(x: TLaurent) -> dict:
    return {
        "alphabet": x.alphabet.kind,
        "prime": x.alphabet.prime,
        "dimBound": x.dim_bound,
        "tlow": x.tlow,
        "thigh": x.thigh,
        "coeffs": {str(k): poly_to_json(x.coeffs[k]) for k in sorted(x.coeffs)},
    }


def tlaurent_from_json(data) -> TLaurent:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        alphabet = alphabet_from_json(data["alphabet"], data.get("prime"))
        coeffs = {int(k): poly_from_json(v) for k, v in data.get("coeffs", {}).items()}
        return TLaurent(alphabet, coeffs, data.get("tlow"), data.get("thigh"), data.get("dimBound"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed Laurent JSON: {exc}") from exc


def to_json(value):
    """JSON form of a GradedPoly or TLaurent."""
    if isinstance(value, GradedPoly):
        return poly_to_json(value)
    if isinstance(value, TLaurent):
        return tlaurent_to_json(value)
    raise TypeError(f"no JSON form for {type(value).__name__}")


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    return tlaurent_from_json(data) if "coeffs" in data else poly_from_json(data)


def dumps(obj) -> str:
    """Canonical text.  Keys keep their construction order, which is canonical
    everywhere in this package (t-degrees ascend numerically)."""
    return json.dumps(obj, indent=2) + "\n"
