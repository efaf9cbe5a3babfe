import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fglforge.errors import ConfigError
from fglforge.ring import B, V, GradedPoly, TLaurent
from fglforge.serialize import dumps, from_json, poly_from_json, poly_to_json, tlaurent_from_json, tlaurent_to_json, to_json


@st.composite
def polys(draw, alphabet):
    terms = []
    for _ in range(draw(st.integers(0, 4))):
        exps = draw(st.dictionaries(st.integers(1, 4), st.integers(1, 3), max_size=3))
        terms.append((Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 9))), exps))
    return GradedPoly.from_exponents(alphabet, terms, draw(st.sampled_from([None, 6, 12])))


@given(polys(V(3)))
def test_poly_round_trip(x):
    text = json.dumps(poly_to_json(x))
    assert poly_from_json(text) == x
    assert poly_from_json(text).dim_bound == x.dim_bound


@given(st.dictionaries(st.integers(-4, 4), polys(V(2)), max_size=3))
def test_laurent_round_trip(coeffs):
    bounded = {k: c.with_bound(8) for k, c in coeffs.items()}
    value = TLaurent(V(2), bounded, min(bounded, default=0), 5, 8)
    assert tlaurent_from_json(json.dumps(tlaurent_to_json(value))) == value
    assert from_json(to_json(value)) == value


def test_canonical_text_is_stable():
    b1 = GradedPoly.gen(B, 1)
    x = b1 * b1 + GradedPoly.gen(B, 2).scale(Fraction(-3, 2))
    y = GradedPoly.gen(B, 2).scale(Fraction(-3, 2)) + b1 * b1
    assert dumps(to_json(x)) == dumps(to_json(y))
    assert dumps(to_json(x)).endswith("\n")


@pytest.mark.parametrize(
    "bad",
    ['{"alphabet": "q", "terms": []}', '{"alphabet": "v", "terms": []}', '{"alphabet": "b", "terms": [{"coeff": "x"}]}'],
)
def test_malformed_json(bad):
    with pytest.raises(ConfigError):
        poly_from_json(bad)
