"""Exact arithmetic in cyclotomic fields Q(zeta_M) and the root-of-unity specialization.

Elements are rational polynomials in zeta = exp(2 pi i / M) reduced modulo the
cyclotomic polynomial Phi_M, so equality is exact.  Numeric values are produced
as rigorous complex balls (Arb) only for display and positivity checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

import flint

from .scalars import QTScalar, RationalFunction, as_fraction, as_qt, specialize_k


class PoleAtRoot(ArithmeticError):
    """A denominator vanishes at the chosen root of unity."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> flint.fmpz_poly:
    """Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    x = flint.fmpz_poly([0, 1])
    p = x ** n - 1
    for d in range(1, n):
        if n % d == 0:
            quo, rem = divmod(p, cyclotomic_polynomial(d))
            assert rem == 0, f"inexact division by Phi_{d}"
            p = quo
    return p


@lru_cache(maxsize=None)
def _modulus(M: int) -> flint.fmpq_poly:
    return flint.fmpq_poly(cyclotomic_polynomial(M).coeffs())


def _fmpq(x):
    f = as_fraction(x)
    return flint.fmpq(f.numerator, f.denominator)


class CycNumber:
    """Element of Q(zeta_M), stored as a polynomial of degree < phi(M)."""

    __slots__ = ("M", "poly")

    def __init__(self, M: int, poly):
        self.M = M
        if not isinstance(poly, flint.fmpq_poly):
            poly = flint.fmpq_poly(poly)
        mod = _modulus(M)
        if poly.degree() >= mod.degree():
            poly = poly % mod
        self.poly = poly

    @classmethod
    def from_rational(cls, M, x):
        return cls(M, flint.fmpq_poly([_fmpq(x)]))

    @classmethod
    def zeta_power(cls, M, e):
        return cls(M, _zeta_power_poly(M, e % M))

    def _coerce(self, other):
        if isinstance(other, CycNumber):
            if other.M != self.M:
                raise ValueError(f"conductor mismatch {self.M} vs {other.M}")
            return other
        if isinstance(other, (int, Rational)):
            return CycNumber.from_rational(self.M, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber._raw(self.M, self.poly + o.poly)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.M, -self.poly)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber._raw(self.M, self.poly - o.poly)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber._raw(self.M, o.poly - self.poly)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CycNumber._raw(self.M, self.poly * _fmpq(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNumber(self.M, self.poly * o.poly)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        g, s, _ = self.poly.xgcd(_modulus(self.M))
        # g is a nonzero constant since Phi_M is irreducible
        return CycNumber(self.M, s / g[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNumber.from_rational(self.M, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    @classmethod
    def _raw(cls, M, poly):
        obj = cls.__new__(cls)
        obj.M = M
        obj.poly = poly
        return obj

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.poly == o.poly

    def __hash__(self):
        return hash((self.M, str(self.poly)))

    def conj(self) -> "CycNumber":
        """Complex conjugation zeta -> zeta^(-1)."""
        coeffs = self.poly.coeffs()
        out = [flint.fmpq(0)] * self.M
        for i, c in enumerate(coeffs):
            if c != 0:
                out[(-i) % self.M] += c
        return CycNumber(self.M, flint.fmpq_poly(out))

    def galois(self, a: int) -> "CycNumber":
        """The automorphism zeta -> zeta^a (a coprime to M)."""
        if gcd(a, self.M) != 1:
            raise ValueError(f"{a} is not a unit mod {self.M}")
        coeffs = self.poly.coeffs()
        out = [flint.fmpq(0)] * self.M
        for i, c in enumerate(coeffs):
            if c != 0:
                out[(a * i) % self.M] += c
        return CycNumber(self.M, flint.fmpq_poly(out))

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        c = self.poly[0]
        return Fraction(int(c.p), int(c.q))

    def numeric(self, digits: int = 30):
        return numeric_embed(self, digits)

    def __repr__(self):
        return f"CycNumber(M={self.M}, {self.poly})"

    def __str__(self):
        return str(self.poly).replace("x", f"z{self.M}")


@lru_cache(maxsize=None)
def _zeta_power_poly(M, e):
    x = flint.fmpq_poly([0, 1])
    return (x ** e) % _modulus(M)


def numeric_embed(c: CycNumber, digits: int = 30) -> flint.acb:
    """Rigorous complex ball for c under zeta_M -> exp(2 pi i / M)."""
    old = flint.ctx.dps
    flint.ctx.dps = digits + 10
    try:
        total = flint.acb(0)
        for j, a in enumerate(c.poly.coeffs()):
            if a != 0:
                total += flint.acb(flint.arb(a.p) / flint.arb(a.q)) * flint.acb(flint.arb(2 * j) / c.M).exp_pi_i()
        return total
    finally:
        flint.ctx.dps = old


@dataclass(frozen=True)
class RootContext:
    """q = exp(2 pi i / N) with chosen roots q^(1/2), q^(1/4), q^(1/16).

    q^(1/4) = exp(pi i / 2N) * i^j, where j is even for sign_half = +1 and odd
    for sign_half = -1 (so q^(1/2) = sign_half * exp(pi i / N)); `quarter`
    picks between the two fourth roots with that square.  q^(1/16) is the root
    zeta_M^(1 + N j) of q^(1/4), with conductor M = 16 N.
    """

    N: int
    sign_half: int = 1
    quarter: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.sign_half not in (1, -1):
            raise ValueError("sign_half must be +1 or -1")
        if self.quarter not in (0, 1):
            raise ValueError("quarter must be 0 or 1")

    @property
    def M(self) -> int:
        return 16 * self.N

    @property
    def j(self) -> int:
        return (0 if self.sign_half == 1 else 1) + 2 * self.quarter

    @property
    def e16(self) -> int:
        """Exponent of zeta_M giving q^(1/16)."""
        return 1 + self.N * self.j

    def zeta(self, e: int) -> CycNumber:
        return CycNumber.zeta_power(self.M, e)

    def one(self) -> CycNumber:
        return CycNumber.from_rational(self.M, 1)

    def zero(self) -> CycNumber:
        return CycNumber.from_rational(self.M, 0)

    def const(self, x) -> CycNumber:
        return CycNumber.from_rational(self.M, x)

    def q_pow(self, a) -> CycNumber:
        """q^a for a in (1/16)Z, interpreted as (q^(1/16))^(16 a)."""
        a16 = as_fraction(a) * 16
        if a16.denominator != 1:
            raise ValueError(f"q^{a} is not a power of q^(1/16)")
        return self.zeta(int(a16) * self.e16)

    def q_pow_exponent(self, a) -> int:
        a16 = as_fraction(a) * 16
        if a16.denominator != 1:
            raise ValueError(f"q^{a} is not a power of q^(1/16)")
        return (int(a16) * self.e16) % self.M

    @property
    def u(self) -> CycNumber:
        return self.q_pow(Fraction(1, 4))

    def imag_unit(self) -> CycNumber:
        return self.zeta(self.M // 4)


def _eval_univariate(p, ctx: RootContext) -> CycNumber:
    M = ctx.M
    eu = 4 * ctx.e16 % M  # zeta exponent of u = q^(1/4)
    out = [flint.fmpq(0)] * M
    for (a, b), c in p.terms():
        if b:
            raise ValueError("specialize k before evaluating at a root")
        out[(int(a) * eu) % M] += int(c)
    return CycNumber(M, flint.fmpq_poly(out))


def specialize_at_root(x, ctx: RootContext, k=None) -> CycNumber:
    """Evaluate a rational function of u (and v, if k is given) at the root.

    With k given, v = t^(1/2) is first specialized to u^(2k) along the curve
    t = q^k, so removable singularities are cancelled before evaluation.
    """
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Rational)):
        return ctx.const(x)
    x = as_qt(x)
    if k is not None:
        x = specialize_k(x, k)
    num = _eval_univariate(x.num, ctx)
    den = _eval_univariate(x.den, ctx)
    if den.is_zero():
        raise PoleAtRoot(f"denominator {x.den} vanishes at q = exp(2 pi i/{ctx.N})")
    return num / den
