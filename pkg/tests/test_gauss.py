from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.cyclotomic import RootContext
from dahagauss.gauss import (
    c_prime,
    classical_sum,
    even_pairing_constant,
    gauss_constant,
    halfint_prefactor,
    jackson_partial_sum,
    printed_even_pairing_constant,
)

H = Fraction(1, 2)


@given(st.integers(1, 16))
def test_classical_sum_square(N):
    R = RootContext(N)
    S = classical_sum(R)
    assert S * S == R.imag_unit() * (2 * N)


@given(st.integers(3, 16).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, (N - 1) // 2))))
def test_c_prime(Nk):
    N, k = Nk
    c = gauss_constant("c-prime", N, k)
    assert c.agree


@given(st.integers(2, 20).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, N // 2))))
def test_c_double_prime_and_zero_case(Nk):
    N, k = Nk
    c = gauss_constant("c-double-prime", N, k)
    assert c.agree
    M = N // 2
    assert c.zero_case == (N % 2 == 0 and (M - k) % 2 == 1)


@given(st.integers(2, 20).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, N // 2))))
def test_generalized_sum(Nk):
    N, k = Nk
    assert gauss_constant("generalized", N, k).agree


@pytest.mark.parametrize("N,s", [(N, s) for N in (7, 9, 10) for s in range(4) if 2 * s + 1 < N])
def test_negative_half_integral_constant(N, s):
    k = -H - s
    assert gauss_constant("c-prime-negative", N, k).agree


def test_jackson_sum_at_root_terminates():
    R = RootContext(7)
    k = 2
    full = jackson_partial_sum(R, k, 0, 7 - 2 * k)
    assert full == c_prime(R, k, 7)


def test_pairing_constants():
    R = RootContext(3)
    # odd N: i^(N (k+m+n)^2) differs from the alternative at k = m = n = 1
    assert even_pairing_constant(R, 1, 1, 1) != printed_even_pairing_constant(R, 1, 1, 1)
    R = RootContext(8)
    assert even_pairing_constant(R, 1, 0, 0).is_zero()
    # 1 + i^(2k - N): vanishes when 2k - N = 2 mod 4
    assert halfint_prefactor(RootContext(5), Fraction(3, 2)).is_zero()
    assert halfint_prefactor(RootContext(7), Fraction(3, 2)) == 2
    R = RootContext(6)
    assert halfint_prefactor(R, Fraction(1, 2)) == 1 + R.imag_unit() ** 3


def test_unknown_formula():
    with pytest.raises(ValueError):
        gauss_constant("nope", 5, 1)
