import pytest

from fglforge.fgl import (
    additive_fgl,
    characteristic_numbers,
    cp_class,
    formal_inverse,
    formal_multiple,
    formal_sum,
    log_coefficients,
    t_series,
    universal_fgl,
)
from fglforge.ring import B, GradedPoly

from oracles import to_poly, universal_fgl_coeffs, universal_log, x


@pytest.fixture(scope="module")
def law5():
    return universal_fgl(5, 4)


def test_log_coefficients_match_reversion_oracle():
    b, _, log = universal_log(5)
    ours = log_coefficients(5)
    for n in range(1, 6):
        assert ours[n] == to_poly(log.coeff(x, n + 1), b, B, 5)


def test_fgl_coefficients_match_oracle(law5):
    b, coeffs = universal_fgl_coeffs(4)
    for (i, j), c in coeffs.items():
        assert law5.coefficient(i, j) == to_poly(c, b, B, 4), (i, j)


def test_low_coefficients_frozen(law5):
    b1 = GradedPoly.gen(B, 1, dim_bound=4)
    b2 = GradedPoly.gen(B, 2, dim_bound=4)
    assert law5.coefficient(1, 1) == b1.scale(2)
    assert law5.coefficient(1, 2) == b2.scale(3) - (b1 * b1).scale(2)


def test_axioms(law5):
    assert law5.check_unit()
    assert law5.check_commutative()
    assert law5.check_associative()


def test_coefficients_are_integral():
    law = universal_fgl(9, 8)
    assert all(c.is_integral() for c in law.F.coeffs.values())


@pytest.mark.parametrize("n", range(1, 9))
def test_projective_space_classes_integral(n):
    nums = characteristic_numbers(cp_class(n), n)
    assert nums.integral
    assert nums.nonzero()


def test_cp2_class_frozen():
    # (n+1) m_n at n = 2 from the reversion oracle: 6 b1^2 - 3 b2
    b1 = GradedPoly.gen(B, 1, dim_bound=2)
    assert cp_class(2) == (b1 * b1).scale(6) - GradedPoly.gen(B, 2, dim_bound=2).scale(3)


def test_characteristic_numbers_rejects_inhomogeneous():
    b1 = GradedPoly.gen(B, 1, dim_bound=3)
    with pytest.raises(ValueError):
        characteristic_numbers(b1 + b1 * b1)


def test_formal_inverse_and_multiples(law5):
    t = t_series(5, law5.zero)
    inv = formal_inverse(law5, t)
    assert formal_sum(law5, t, inv).is_zero()
    two = formal_multiple(law5, 2, t)
    assert two == formal_sum(law5, t, t)
    assert formal_multiple(law5, -1, t) == inv


def test_additive_law():
    law = additive_fgl(GradedPoly.zero(B, 3), 4)
    assert law.check_associative()
    assert law.coefficient(1, 1).is_zero()
