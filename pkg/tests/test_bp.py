from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fglforge.bp import BPContext, NotPTypical, filtration_level, ideal_membership, is_power_of, tlaurent_membership
from fglforge.errors import PLocalityError
from fglforge.ring import B, V, GradedPoly

from oracles import bp_p_series, hazewinkel_lambdas, to_poly


@pytest.fixture(scope="module")
def ctx2():
    return BPContext(2, 12)


@pytest.fixture(scope="module")
def ctx3():
    return BPContext(3, 10)


@pytest.mark.parametrize("p,D,K", [(2, 12, 3), (3, 10, 2), (5, 8, 1)])
def test_lambdas_match_hazewinkel_oracle(p, D, K):
    ctx = BPContext(p, D)
    v, lam = hazewinkel_lambdas(p, K)
    for k in range(1, K + 1):
        assert ctx.lambda_v[k] == to_poly(lam[k], v, V(p), D)


def test_p_series_at_two_matches_oracle():
    ctx = BPContext(2, 4)
    v, ps = bp_p_series(2, 2, 5)
    for n in range(5):
        assert ctx.p_series.coefficient(n) == to_poly(ps[n], v, V(2), 4), n


def test_p_series_at_three_matches_oracle():
    ctx = BPContext(3, 8)
    v, ps = bp_p_series(3, 2, 9)
    for n in range(9):
        assert ctx.p_series.coefficient(n) == to_poly(ps[n], v, V(3), 8), n


def test_p_series_frozen_values():
    # from the oracle: 2 - v1 t + 2 v1^2 t^2 - (8 v1^3 + 7 v2) t^3
    ctx = BPContext(2, 3)
    v1, v2 = ctx.v(1), ctx.v(2)
    expected = {0: ctx.v(0), 1: -v1, 2: (v1 * v1).scale(2), 3: -(v1**3).scale(8) - v2.scale(7)}
    assert {k: ctx.p_series.coefficient(k) for k in range(4)} == expected


def test_v_in_b_low_degrees(ctx2):
    b1 = GradedPoly.gen(B, 1, dim_bound=12)
    b2 = GradedPoly.gen(B, 2, dim_bound=12)
    b3 = GradedPoly.gen(B, 3, dim_bound=12)
    assert ctx2.v_in_b[1] == b1.scale(-2)
    assert ctx2.v_in_b[2] == (b1 * b2).scale(10) - (b1**3).scale(6) - b3.scale(2)


@pytest.mark.parametrize("p,D", [(2, 12), (3, 10)])
def test_congruence_mod_square_of_ideal(p, D):
    ctx = BPContext(p, D)
    diff = ctx.p_series - ctx.p_series_leq(ctx.kmax)
    assert all(tlaurent_membership(diff, 2).values())


def test_truncated_series_alone_is_not_enough(ctx2):
    # dropping v2 breaks the congruence at t^3
    diff = ctx2.p_series - ctx2.p_series_leq(1)
    member = tlaurent_membership(diff, 2)
    assert member[3] is False


@pytest.mark.parametrize("p,D,kmax", [(2, 12, 3), (3, 10, 2)])
def test_nu_elements(p, D, kmax):
    ctx = BPContext(p, D)
    for k in range(1, kmax + 1):
        row = ctx.nu_element_report(k)
        assert row["pass"], row


def test_quillen_projection_round_trip(ctx2):
    for k in range(1, ctx2.kmax + 1):
        assert ctx2.to_v_basis(ctx2.v_in_b[k]) == ctx2.v(k)


def test_non_typical_class_rejected(ctx2):
    with pytest.raises(NotPTypical):
        ctx2.to_v_basis(GradedPoly.gen(B, 2, dim_bound=12))


@st.composite
def bp_elements(draw, p=2, D=8):
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        exps = draw(st.dictionaries(st.integers(1, 2), st.integers(1, 2), max_size=2))
        num = draw(st.integers(-12, 12).filter(bool))
        den = draw(st.sampled_from([1, 3, 5] if p == 2 else [1, 2, 4]))
        terms.append((Fraction(num, den), exps))
    return GradedPoly.from_exponents(V(p), terms, D)


@given(bp_elements(), bp_elements())
def test_filtration_is_multiplicative(a, b):
    prod = a * b
    la, lb = filtration_level(a), filtration_level(b)
    if prod.is_zero() or la is None or lb is None:
        return
    assert ideal_membership(prod, la + lb)


@given(bp_elements(), st.integers(0, 5))
def test_membership_agrees_with_level(a, m):
    level = filtration_level(a)
    if level is None:
        assert ideal_membership(a, m)
    else:
        assert ideal_membership(a, m) == (level >= m)


def test_membership_examples():
    v1 = GradedPoly.gen(V(2), 1, dim_bound=6)
    assert ideal_membership(v1.scale(4), 3)
    assert not ideal_membership(v1.scale(6), 3)
    assert ideal_membership(v1.scale(Fraction(6, 5)), 2)
    with pytest.raises(PLocalityError):
        ideal_membership(v1.scale(Fraction(1, 2)), 1)


def test_is_power_of():
    assert is_power_of(9, 3) and not is_power_of(6, 3) and is_power_of(1, 2)
