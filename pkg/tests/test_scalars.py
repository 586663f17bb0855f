from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.scalars import (
    DivisionByZero,
    NotASeries,
    QSeries,
    QTScalar,
    U,
    V,
    as_fraction,
    qpow,
    qt_monomial,
    series_expand,
    shift_k,
    specialize_k,
    star,
    tpow,
)

small = st.integers(-3, 3)


@st.composite
def qt_scalars(draw):
    """Small rational functions in u, v with a nonzero denominator."""
    def poly():
        total = QTScalar(0)
        for _ in range(draw(st.integers(1, 3))):
            total = total + qt_monomial(Fraction(draw(small), 4), Fraction(draw(small), 2), draw(st.integers(-3, 3)))
        return total
    num = poly()
    den = poly()
    if den.is_zero():
        den = QTScalar(1)
    return num / den


@given(qt_scalars(), qt_scalars(), qt_scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not b.is_zero():
        assert (a / b) * b == a


@given(qt_scalars(), qt_scalars())
def test_star_is_an_involutive_ring_map(a, b):
    assert star(star(a)) == a
    assert star(a * b) == star(a) * star(b)
    assert star(a + b) == star(a) + star(b)


def test_monomials():
    assert qpow(1) == U ** 4
    assert tpow(Fraction(1, 2)) == V
    assert qpow(Fraction(1, 2)) * qpow(Fraction(-1, 2)) == 1
    assert star(qpow(1) + tpow(1)) == qpow(-1) + tpow(-1)


def test_specialize_k_removes_removable_singularities():
    # (1 - t q) / (1 - t q) at t = q^-1 is 1, not 0/0
    x = (1 - tpow(1) * qpow(1)) / (1 - qpow(1) * tpow(1))
    assert specialize_k(x, -1) == 1
    y = (1 - tpow(1)) / (1 - qpow(1))
    assert specialize_k(y, 1) == 1
    assert shift_k(tpow(1), 1) == tpow(1) * qpow(1)


def test_specialize_k_rejects_thirds():
    with pytest.raises(ValueError):
        specialize_k(tpow(1), Fraction(1, 3))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QTScalar(1) / QTScalar(0)


def test_as_fraction():
    assert as_fraction("3/2") == Fraction(3, 2)
    assert as_fraction(2) == 2


# ---------------------------------------------------------------- series


@st.composite
def series(draw, L=4, order=6):
    terms = {Fraction(draw(st.integers(-4, 20)), L): draw(st.integers(-5, 5)) for _ in range(draw(st.integers(0, 5)))}
    return QSeries.from_dict({e: c for e, c in terms.items() if c}, L, order)


@given(series(), series(), series())
def test_series_ring(a, b, c):
    assert ((a + b) * c).equals(a * c + b * c)
    assert ((a * b) * c).equals(a * (b * c))


@given(series())
def test_series_inverse(a):
    if a.is_zero():
        return
    inv = a.inverse()
    prod = a * inv
    one = QSeries.monomial(0, 4, prod.order)
    assert prod.equals(one)


def test_geometric_series():
    s = series_expand(1 / (1 - qpow(1)), 4, 10)
    assert all(s.coefficient(j) == 1 for j in range(10))
    assert s.coefficient(Fraction(1, 2)) == 0


@given(st.integers(1, 4), st.integers(5, 20), st.integers(5, 20))
def test_expansion_independent_of_truncation(k, D1, D2):
    """Expanding at two orders gives the same coefficients below the smaller one."""
    x = (1 - qpow(k)) * (1 - qpow(2 * k + 1)) / ((1 - qpow(1)) * (1 + qpow(Fraction(1, 2))))
    a, b = series_expand(x, 4, D1), series_expand(x, 4, D2)
    assert a.equals(b, min(D1, D2))


def test_shift_and_refine():
    s = QSeries.from_dict({0: 1, Fraction(1, 4): 2}, 4, 5)
    t = s.refine(16).shift(Fraction(1, 16))
    assert t.L == 16 and t.coefficient(Fraction(1, 16)) == 1 and t.coefficient(Fraction(5, 16)) == 2
    with pytest.raises(NotASeries):
        QSeries.monomial(Fraction(1, 3), 4, 5)


def test_coefficient_beyond_precision_raises():
    s = series_expand(qpow(1), 4, 3)
    with pytest.raises(NotASeries):
        s.coefficient(5)


def test_first_difference_is_a_witness():
    a = QSeries.from_dict({0: 1, 2: 3}, 4, 6)
    b = QSeries.from_dict({0: 1, 2: 4}, 4, 6)
    assert not a.equals(b)
    e, d = a.first_difference(b)
    assert e == 2 and d == -1
