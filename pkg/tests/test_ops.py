from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fglforge.bp import BPContext, ideal_membership
from fglforge.errors import ConfigError, TruncationError
from fglforge.ops import (
    SteenrodContext,
    default_reps,
    phi_defect,
    sample_ideal_power,
    twisted_log_check,
    validate_reps,
    verify_concentration,
    verify_cor_stid,
    verify_coset_independence,
    verify_phi_additivity,
    verify_prop_stp,
    verify_prop_symim,
)
from fglforge.ring import V, GradedPoly, TLaurent

from oracles import steenrod_v1_at_two, t, to_poly


@pytest.fixture(scope="module")
def s2():
    return SteenrodContext(BPContext(2, 9))


@pytest.fixture(scope="module")
def s3():
    return SteenrodContext(BPContext(3, 10))


def test_st_v1_matches_sympy_oracle():
    sctx = SteenrodContext(BPContext(2, 3))
    v, value = steenrod_v1_at_two(3)
    ours = sctx.st_v[1]
    for k in range(-2, 2):
        assert ours.coefficient(k) == to_poly(value.coeff(t, k), v, V(2), 3), k


def test_st_v1_frozen_at_dimension_five():
    # oracle output at dimBound 5:
    # -2 t^-2 + 3 v1 t^-1 - 2 v1^2 + (4 v1^3 + 4 v2) t - (6 v1^4 + 8 v1 v2) t^2 + (8 v1^5 + 12 v1^2 v2) t^3
    ctx = BPContext(2, 5)
    v1, v2 = ctx.v(1), ctx.v(2)
    expected = {
        -2: ctx.one().scale(-2),
        -1: v1.scale(3),
        0: (v1 * v1).scale(-2),
        1: (v1**3).scale(4) + v2.scale(4),
        2: -(v1**4).scale(6) - (v1 * v2).scale(8),
        3: (v1**5).scale(8) + (v1 * v1 * v2).scale(12),
    }
    ours = SteenrodContext(ctx).st_v[1]
    assert {k: ours.coefficient(k) for k in range(-2, 4)} == expected


def test_default_reps():
    assert default_reps(2) == (1,)
    assert default_reps(5) == (1, 2, 3, 4)


@pytest.mark.parametrize("reps", [(1, 1), (0, 1), (1, 2, 3)])
def test_bad_reps(reps):
    with pytest.raises(ConfigError):
        validate_reps(reps, 3)


def test_gamma1_leading_term(s3):
    assert s3.gamma1.min_degree() == 2
    assert s3.gamma1.coefficient(2) == GradedPoly.constant(V(3), s3.epsilon, 10)


def test_st_is_identity_on_constants(s2):
    st7 = s2.steenrod(GradedPoly.constant(V(2), 7, 9))
    assert st7 == TLaurent.lift(GradedPoly.constant(V(2), 7, 9)).window(*s2.window_for(0))


@st.composite
def small_elements(draw, ctx, top=3):
    terms = []
    for _ in range(draw(st.integers(1, 2))):
        e = draw(st.dictionaries(st.integers(1, 2), st.integers(1, 2), max_size=2))
        if sum((ctx.prime**i - 1) * k for i, k in e.items()) > top:
            e = {1: 1}
        terms.append((draw(st.integers(-3, 3).filter(bool)), e))
    return GradedPoly.from_exponents(ctx.alphabet, terms, ctx.dim_bound)


@settings(max_examples=15)
@given(st.data())
def test_st_is_multiplicative(data):
    ctx = BPContext(2, 9)
    sctx = SteenrodContext(ctx)
    a = data.draw(small_elements(ctx, 2))
    b = data.draw(small_elements(ctx, 2))
    full = lambda x: x.substitute(sctx.st_v, TLaurent.one(ctx.alphabet, ctx.dim_bound))
    assert full(a * b) == full(a) * full(b)
    assert full(a + b) == full(a) + full(b)


@pytest.mark.parametrize("ks", [(1,), (2,), (1, 1), (1, 1, 1), (1, 2)])
def test_prop_stp_at_two(s2, ks):
    assert verify_prop_stp(s2, ks)["pass"]


def test_prop_stp_at_three(s3):
    assert verify_prop_stp(s3, (1,))["pass"]


@pytest.mark.parametrize("text", ["2", "v1", "v1^2", "2*v1", "v1^3 + v2"])
def test_component_identity(s2, text):
    from fglforge.verify import parse_element

    assert verify_cor_stid(s2, parse_element(text, s2.ctx))["pass"]


def test_component_identity_at_three(s3):
    assert verify_cor_stid(s3, s3.ctx.v(1))["pass"]


def test_st_window_needs_room():
    sctx = SteenrodContext(BPContext(2, 4))
    with pytest.raises(TruncationError, match="truncation insufficient"):
        sctx.steenrod(sctx.ctx.v(2))


def test_phi_of_v1_at_two():
    sctx = SteenrodContext(BPContext(2, 5))
    phi = sctx.phi(sctx.ctx.v(1))
    # solve by hand: ([2] Phi)_{<=0} = (v1^2 - St(v1))_{<=0}
    ps = sctx.ctx.p_series
    lhs = (ps * phi).slice_leq(0)
    rhs = (TLaurent.lift(sctx.ctx.v(1) ** 2) - sctx.steenrod(sctx.ctx.v(1), (-2, 0))).slice_leq(0)
    assert lhs == rhs
    assert phi.coefficient(-2) == GradedPoly.constant(V(2), 1, 5)


def test_phi_raises_on_non_local_input(s2):
    from fglforge.errors import PLocalityError

    with pytest.raises(PLocalityError):
        s2.phi(s2.ctx.v(1).scale(Fraction(1, 2)))


@pytest.mark.parametrize("p,D,m", [(2, 9, 1), (2, 9, 2), (3, 10, 1)])
def test_phi_lowers_filtration_by_one(p, D, m):
    ctx = BPContext(p, D)
    samples = sample_ideal_power(ctx, m + 1, 10, seed=m)
    assert len(samples) == 10
    report = verify_prop_symim(SteenrodContext(ctx), samples, m)
    assert report["pass"]
    assert not any(row["divisibilityFailure"] for row in report["samples"])


def test_phi_defect_lives_in_degree_zero(s2):
    ctx = s2.ctx
    v1, v2 = ctx.v(1), ctx.v(2)
    defect = phi_defect(s2, v1**3, v2)
    assert set(defect.coeffs) <= {0}
    pool = sample_ideal_power(ctx, 0, 12, seed=3)
    same = [(a, b) for a in pool for b in pool if a is not b and a.homogeneous_dim() == b.homogeneous_dim()][:6]
    assert verify_phi_additivity(s2, same)["pass"]


def test_samples_are_reproducible():
    ctx = BPContext(2, 8)
    assert sample_ideal_power(ctx, 2, 5, seed=9) == sample_ideal_power(ctx, 2, 5, seed=9)
    assert all(ideal_membership(x, 2) for x in sample_ideal_power(ctx, 2, 8, seed=1))


def test_coset_independence():
    assert verify_coset_independence(BPContext(2, 8), (1,), (3,), BPContext(2, 8).v(1))["pass"]
    ctx = BPContext(3, 10)
    assert verify_coset_independence(ctx, (1, 2), (1, -1), ctx.v(1))["pass"]
    assert verify_coset_independence(ctx, (1, 2), (4, 5), ctx.v(1))["pass"]


def test_concentration(s2):
    assert verify_concentration(s2, s2.ctx.v(1).scale(2))["pass"]
    assert verify_concentration(s2, s2.ctx.v(1) * s2.ctx.v(1))["pass"]


@pytest.mark.parametrize("p,D", [(2, 6), (3, 6)])
def test_twisted_log_two_ways(p, D):
    assert twisted_log_check(BPContext(p, D), 6)["pass"]
