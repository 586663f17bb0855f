from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.polyrep import (
    LaurentPoly,
    Mode,
    T0_hat,
    T_hat,
    T_hat_inv,
    X_mul,
    Y_hat,
    Y_hat_inv,
    evaluate,
    minus_k_half,
    shift_operator,
    star_poly,
)
from dahagauss.scalars import qt_monomial

FORMAL = Mode.formal()


@st.composite
def laurent(draw, mode=FORMAL):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        m = draw(st.integers(-4, 4))
        c = qt_monomial(Fraction(draw(st.integers(-2, 2)), 4), Fraction(draw(st.integers(-2, 2)), 2),
                        draw(st.integers(-3, 3)))
        terms[m] = mode.convert(c)
    return LaurentPoly({m: c for m, c in terms.items() if not c.is_zero()}, mode)


@given(laurent())
def test_hecke_quadratic_relation(f):
    v, vinv = FORMAL.v_pow(1), FORMAL.v_pow(-1)
    g = T_hat(f) - f.scale(v)
    assert T_hat(g) + g.scale(vinv) == LaurentPoly({}, FORMAL)


@given(laurent())
def test_inverses(f):
    assert T_hat_inv(T_hat(f)) == f
    assert Y_hat_inv(Y_hat(f)) == f


@given(laurent())
def test_daha_relations_on_polynomials(f):
    assert T_hat(X_mul(T_hat(f), 1)) == X_mul(f, -1)
    lhs = Y_hat_inv(X_mul(Y_hat(X_mul(T_hat(T_hat(f)), 1)), -1))
    assert lhs == f.scale(FORMAL.q_pow(Fraction(-1, 2)))


@given(laurent())
def test_even_operator_is_y_squared_t_inverse(f):
    assert Y_hat(Y_hat(T_hat_inv(f))) == T0_hat(f)


@given(laurent(), laurent())
def test_star_is_multiplicative(f, g):
    assert star_poly(f * g) == star_poly(f) * star_poly(g)
    assert star_poly(star_poly(f)) == f


def test_shift_operator_lowers_degree():
    f = LaurentPoly({2: FORMAL.one(), -2: FORMAL.one()}, FORMAL)
    g = shift_operator(f)
    assert set(g.terms) <= {-1, 1}


def test_evaluate_at_minus_k_half():
    mode = Mode.at_k(2)
    X = LaurentPoly.monomial(1, mode)
    # X = q^x at x = -k/2 = -1
    assert evaluate(X, minus_k_half().value(mode.k)) == mode.q_pow(-1)


def test_mode_checks():
    with pytest.raises(ValueError):
        Mode("k", Fraction(1, 3))
    with pytest.raises(ValueError):
        Mode.at_k(1).q_pow(Fraction(1, 8))
    assert str(FORMAL) == "formal"
