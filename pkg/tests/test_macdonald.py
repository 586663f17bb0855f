from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.macdonald import (
    duality_check,
    eigenvalue,
    from_rank,
    macdonald_e,
    rank,
    rogers_duality_check,
    rogers_p,
    shift_check,
    spherical_epsilon,
)
from dahagauss.polyrep import LaurentPoly, Mode, T_hat, Y_hat, evaluate, minus_k_half
from dahagauss.scalars import qpow, tpow

FORMAL = Mode.formal()
modes = st.sampled_from([FORMAL, Mode.at_k(1), Mode.at_k(2), Mode.at_k(3)])
labels = st.integers(-6, 6)


@given(labels, modes)
def test_e_is_monic_y_eigenvector(n, mode):
    e = macdonald_e(n, mode)
    assert e.coefficient(n) == mode.one()
    assert Y_hat(e) == e.scale(eigenvalue(n, mode))


@given(labels, labels, modes)
def test_duality(m, n, mode):
    assert duality_check(m, n, mode)


@given(st.integers(0, 6), st.integers(0, 6), modes)
def test_rogers_duality(m, n, mode):
    assert rogers_duality_check(m, n, mode)


@given(labels, modes)
def test_spherical_normalization(n, mode):
    eps = spherical_epsilon(n, mode)
    pt = minus_k_half() if mode.kind == "formal" else minus_k_half().value(mode.k)
    assert evaluate(eps, pt) == mode.one()


@given(st.integers(0, 6), modes)
def test_rogers_is_symmetric_and_t_invariant(n, mode):
    p = rogers_p(n, mode)
    assert all(p.coefficient(m) == p.coefficient(-m) for m in range(-n, n + 1))
    assert T_hat(p) == p.scale(mode.v_pow(1))


@given(st.integers(1, 6), st.sampled_from([FORMAL, Mode.at_k(1), Mode.at_k(2)]))
def test_shift_relation(n, mode):
    assert shift_check(n, mode)


def test_rank_ordering():
    assert [from_rank(r) for r in range(5)] == [0, 1, -1, 2, -2]
    assert all(from_rank(rank(m)) == m for m in range(-5, 6))


def test_first_rogers_polynomials():
    p1 = rogers_p(1, FORMAL)
    assert p1 == LaurentPoly({1: FORMAL.one(), -1: FORMAL.one()}, FORMAL)
    p2 = rogers_p(2, FORMAL)
    q, t = qpow(1), tpow(1)
    assert p2.coefficient(0) == (1 + q) * (1 - t) / (1 - q * t)


def test_epsilon_two_closed_form():
    q, t = qpow(1), tpow(1)
    eps = spherical_epsilon(2, FORMAL)
    assert eps.coefficient(2) == t * (1 - t * q) / (1 - t * t * q)
    assert eps.coefficient(0) == t * (q - q * t) / (1 - t * t * q)
    assert eps.coefficient(1) == 0 and eps.coefficient(-2) == 0
