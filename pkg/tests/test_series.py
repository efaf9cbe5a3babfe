from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fglforge.errors import NotInvertibleError
from fglforge.ring import B, GradedPoly
from fglforge.series import Series

N = 6
ZERO = GradedPoly.zero(B, 6)


def univariate(coeffs):
    return Series.from_univariate({n: GradedPoly.constant(B, c, 6) for n, c in coeffs.items()}, N, ZERO)


@st.composite
def rational_series(draw, start=1, unit_leading=True):
    coeffs = {}
    for n in range(start, N + 1):
        coeffs[n] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    if unit_leading:
        coeffs[start] = Fraction(draw(st.sampled_from([-2, -1, 1, 3])))
    return univariate(coeffs)


@given(rational_series())
def test_reversion_round_trip(f):
    g = f.invert_composition()
    x = Series.variable(0, 1, N, ZERO)
    assert f.compose(g) == x
    assert g.compose(f) == x


@given(rational_series(start=0))
def test_multiplicative_inverse(f):
    one = Series.constant(ZERO.one_like(), 1, N, ZERO)
    assert f * f.mul_inverse() == one


def test_multiplicative_inverse_needs_unit():
    with pytest.raises(NotInvertibleError):
        univariate({1: 1}).mul_inverse()


@given(rational_series(), rational_series())
def test_derivative_is_a_derivation(f, g):
    lhs = (f * g).derivative()
    rhs = f.derivative() * g + f * g.derivative()
    assert lhs.truncate(N - 1) == rhs.truncate(N - 1)


def test_geometric_series_reversion():
    # x / (1 + x) has inverse x / (1 - x)
    f = univariate({n: (-1) ** (n + 1) for n in range(1, N + 1)})
    g = f.invert_composition()
    assert all(g.coefficient((n,)) == GradedPoly.one(B, 6) for n in range(1, N + 1))


def test_two_variable_substitution():
    x = Series.variable(0, 2, 4, ZERO)
    y = Series.variable(1, 2, 4, ZERO)
    f = x * y + x
    h = f.substitute([x + y, y])
    assert h == x * y + y * y + x + y
