from fractions import Fraction

import flint
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.cyclotomic import (
    CycNumber,
    PoleAtRoot,
    RootContext,
    cyclotomic_polynomial,
    numeric_embed,
    specialize_at_root,
)
from dahagauss.scalars import qpow, tpow

M = 48


class working_digits:
    def __init__(self, digits):
        self.digits = digits

    def __enter__(self):
        self.old = flint.ctx.dps
        flint.ctx.dps = self.digits

    def __exit__(self, *exc):
        flint.ctx.dps = self.old


@st.composite
def cyc(draw, M=M):
    terms = draw(st.lists(st.tuples(st.integers(0, M - 1), st.integers(-4, 4)), max_size=5))
    x = CycNumber.from_rational(M, 0)
    for e, c in terms:
        x = x + CycNumber.zeta_power(M, e) * c
    return x


@given(cyc(), cyc(), cyc())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


@given(cyc(), cyc())
def test_conjugation(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    with working_digits(30):
        x, y = numeric_embed(a.conj(), 20), numeric_embed(a, 20).conjugate()
        assert abs(x - y) < flint.arb(10) ** -15


@given(cyc())
def test_embedding_is_a_ring_map(a):
    b = a * a + 3
    with working_digits(35):
        lhs = numeric_embed(b, 25)
        z = numeric_embed(a, 25)
        assert abs(lhs - (z * z + 3)) < flint.arb(10) ** -20


def test_cyclotomic_polynomials():
    x = flint.fmpz_poly([0, 1])
    assert cyclotomic_polynomial(1) == x - 1
    assert cyclotomic_polynomial(4) == x ** 2 + 1
    assert cyclotomic_polynomial(12) == x ** 4 - x ** 2 + 1
    assert cyclotomic_polynomial(16).degree() == 8


def test_zeta_is_primitive():
    z = CycNumber.zeta_power(M, 1)
    assert z ** M == 1
    assert all(z ** d != 1 for d in (1, 2, 3, 4, 6, 8, 12, 16, 24))


@pytest.mark.parametrize("N", [1, 2, 3, 5, 8])
@pytest.mark.parametrize("sign", [1, -1])
def test_root_context_roots(N, sign):
    R = RootContext(N, sign)
    assert R.q_pow(1) ** N == 1
    assert R.q_pow(Fraction(1, 16)) ** 16 == R.q_pow(1)
    assert R.q_pow(Fraction(1, 4)) ** 2 == R.q_pow(Fraction(1, 2))
    assert R.imag_unit() ** 2 == -1
    half = numeric_embed(R.q_pow(Fraction(1, 2)), 20)
    target = flint.acb(flint.arb(1) / N).exp_pi_i() * sign
    assert abs(half - target) < flint.arb(10) ** -15


def test_enclosure_shrinks_with_digits():
    R = RootContext(7)
    x = R.q_pow(Fraction(1, 4)) + R.q_pow(Fraction(3, 16)) * 5
    w20 = numeric_embed(x, 20).real.rad()
    w60 = numeric_embed(x, 60).real.rad()
    assert w60 < w20
    assert w60 < flint.arb(10) ** -55


def test_specialization_and_poles():
    R = RootContext(3)
    assert specialize_at_root(qpow(3), R) == 1
    assert specialize_at_root((1 - tpow(1)) / (1 - qpow(1)), R, k=1) == 1
    with pytest.raises(PoleAtRoot):
        specialize_at_root(1 / (1 - qpow(3)), R)


def test_galois_and_rational_parts():
    R = RootContext(4)
    i = R.imag_unit()
    assert (i * i).is_rational() and (i * i).to_fraction() == -1
    assert i.galois(-1) == i.conj()
    with pytest.raises(ValueError):
        RootContext(0)
