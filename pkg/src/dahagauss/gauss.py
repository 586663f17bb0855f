"""Gauss-type sums and their closed forms at roots of unity.

Every function takes a `field`, anything with q_pow, one and zero (a
RootContext or a Mode), so the same finite sums serve exact cyclotomic
checks and generic-q checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber, RootContext
from .scalars import as_fraction

HALF = Fraction(1, 2)


class ZeroCase(ArithmeticError):
    """Both sides of an identity vanish identically at these parameters."""


def _one_minus(F, a):
    return F.one() - F.q_pow(a)


def _one_plus(F, a):
    return F.one() + F.q_pow(a)


def jackson_weight(F, k, j: int):
    """(1 - q^(j+k)) / (1 - q^k) prod_{l=1}^j (1 - q^(l+2k-1)) / (1 - q^l)."""
    k = as_fraction(k)
    w = _one_minus(F, j + k) / _one_minus(F, k)
    for l in range(1, j + 1):
        w = w * _one_minus(F, l + 2 * k - 1) / _one_minus(F, l)
    return w


def even_weight(F, k, j: int):
    """(1 - q^(2j+k)) / (1 - q^k) prod_{l=1}^{2j} (1 - q^(l+2k-1)) / (1 - q^l)."""
    k = as_fraction(k)
    w = _one_minus(F, 2 * j + k) / _one_minus(F, k)
    for l in range(1, 2 * j + 1):
        w = w * _one_minus(F, l + 2 * k - 1) / _one_minus(F, l)
    return w


def jackson_partial_sum(F, k, lo: int, hi: int):
    """sum_{j=lo}^{hi} q^((j-k)^2/4) jackson_weight(k, j)."""
    k = as_fraction(k)
    total = F.zero()
    for j in range(lo, hi + 1):
        total = total + F.q_pow((j - k) ** 2 / 4) * jackson_weight(F, k, j)
    return total


def even_partial_sum(F, k, hi: int, lo: int = 0):
    """sum_{j=lo}^{hi} q^(j^2 - kj) even_weight(k, j)."""
    k = as_fraction(k)
    total = F.zero()
    for j in range(lo, hi + 1):
        total = total + F.q_pow(j * j - k * j) * even_weight(F, k, j)
    return total


def classical_sum(R: RootContext):
    """S = sum_{m=0}^{2N-1} q^(m^2/4)."""
    total = R.zero()
    for m in range(2 * R.N):
        total = total + R.q_pow(Fraction(m * m, 4))
    return total


def theta_sum(R: RootContext, lo: int, hi: int, square_over=4):
    total = R.zero()
    for m in range(lo, hi + 1):
        total = total + R.q_pow(Fraction(m * m, square_over))
    return total


def q_factorial(F, k: int):
    """prod_{j=1}^k (1 - q^j)."""
    p = F.one()
    for j in range(1, k + 1):
        p = p * _one_minus(F, j)
    return p


def c_prime(F, k, N: int | None = None):
    """Closed form of <gamma>' on the full module.

    integral k:       prod_{j=1}^k (1 - q^j)^-1 sum_{m=-N+1}^{N} q^(m^2/4)
    k = 1/2 + s:      2 q^(1/16) prod_{j=0}^{s} 1 / (1 - q^(1/2+j))
    k = -1/2 - s:     q^(1/16) prod_{j=1}^{s} (1 - q^(1/2-j))
    """
    k = as_fraction(k)
    if k.denominator == 1:
        if N is None:
            raise ValueError("integral k needs N")
        S = F.zero()
        for m in range(-N + 1, N + 1):
            S = S + F.q_pow(Fraction(m * m, 4))
        return S / q_factorial(F, int(k))
    return F.q_pow(Fraction(1, 16)) * halfint_product(F, k)


def halfint_product(F, k):
    """C'_k / q^(1/16) for half-integral k: 2 prod 1 / (1 - q^(1/2+j)) or prod (1 - q^(1/2-j))."""
    k = as_fraction(k)
    p = F.one()
    if k > 0:
        for j in range(int(k - HALF) + 1):
            p = p * _one_minus(F, HALF + j)
        return 2 / p
    for j in range(1, int(-k - HALF) + 1):
        p = p * _one_minus(F, HALF - j)
    return p


def l_square_exponent(N: int) -> Fraction:
    """Exponent of q^(L^2): M^2/4 for N = 2M, (M/2 mod N)^2 for N = 2M + 1."""
    M = N // 2
    if N % 2 == 0:
        return Fraction(M * M, 4)
    L = (M * pow(2, -1, N)) % N
    return Fraction(L * L)


def lk_exponent(N: int, k: int) -> Fraction:
    """(L - K)(L + K) with L +- K = (M +- k)/2, reduced mod N for odd N."""
    M = N // 2
    if N % 2 == 0:
        return Fraction(M * M - k * k, 4)
    inv2 = pow(2, -1, N)
    return Fraction(((M + k) * inv2 % N) * ((M - k) * inv2 % N))


def c_double_prime(F, k, N: int | None = None):
    """Closed form of the even-module constant.

    integral k:    q^(L^2) prod_{j=k+1}^M (1 - q^j)
    k = 1/2 + s:   prod_{j=0}^{s} (1 + q^(k-2j)) / (1 - q^(2k-2j))
    k = -1/2 - s:  prod_{j=1}^{s} (1 - q^(2k+2j)) / (1 + q^(k+2j))
    """
    k = as_fraction(k)
    if k.denominator == 1:
        if N is None:
            raise ValueError("integral k needs N")
        p = F.q_pow(l_square_exponent(N))
        for j in range(int(k) + 1, N // 2 + 1):
            p = p * _one_minus(F, j)
        return p
    if k > 0:
        p = F.one()
        for j in range(int(k - HALF) + 1):
            p = p * _one_plus(F, k - 2 * j) / _one_minus(F, 2 * k - 2 * j)
        return p
    s = int(-k - HALF)
    p = F.one()
    for j in range(1, s + 1):
        p = p * _one_minus(F, 2 * k + 2 * j) / _one_plus(F, k + 2 * j)
    return p


def imag_power(R: RootContext, e: int) -> CycNumber:
    return R.imag_unit() ** (e % 4)


def even_pairing_constant(R: RootContext, k: int, m: int, n: int) -> CycNumber:
    """Constant C of the even-module pairing (integral k, q^(1/4) = exp(pi i/2N)).

    N = 2M: 0 if M + k + m + n is odd, else 1.  N odd: i^(N (k+m+n)^2), that is
    i^N when k + m + n is odd and 1 otherwise.
    """
    N, M = R.N, R.N // 2
    if N % 2 == 0:
        return R.zero() if (M + k + m + n) % 2 else R.one()
    return imag_power(R, N * (k + m + n) ** 2)


def printed_even_pairing_constant(R: RootContext, k: int, m: int, n: int) -> CycNumber:
    """The alternative i^(N(m^2 + n^2 + 2k(|m| + |n|))) for odd N, kept to document that it fails."""
    N, M = R.N, R.N // 2
    if N % 2 == 0:
        return R.zero() if (M + k + m + n) % 2 else R.one()
    return imag_power(R, N * (m * m + n * n + 2 * k * (abs(m) + abs(n))))


def halfint_prefactor(R: RootContext, k) -> CycNumber:
    """1 + i^(2k - N) for half-integral k."""
    k = as_fraction(k)
    return R.one() + imag_power(R, int(2 * k - R.N))


def printed_halfint_prefactor(R: RootContext, k, m: int, n: int) -> CycNumber:
    """The label-dependent 1 + i^(2k + |m| + |n| - N), kept to document that it fails."""
    k = as_fraction(k)
    return R.one() + imag_power(R, int(2 * k + abs(m) + abs(n) - R.N))


@dataclass
class GaussSumConstants:
    formula: str
    N: int
    M: int
    k: Fraction
    value: object
    defining_sum: object
    L: Fraction | None = None
    K: Fraction | None = None
    s: int | None = None

    @property
    def agree(self) -> bool:
        return self.value == self.defining_sum

    @property
    def zero_case(self) -> bool:
        return self.value.is_zero() and self.defining_sum.is_zero()


GAUSS_FORMULAS = ("c-prime", "c-double-prime", "c-prime-negative", "generalized")


def gauss_constant(formula: str, N: int, k, sign_half: int | None = None) -> GaussSumConstants:
    """A constant computed twice: as <gamma> over the spectral set and in closed form.

    c-prime:           <gamma>' on the full module (integral or half-integral k > 0)
    c-double-prime:    the even-module reduction sum against its closed form
    c-prime-negative:  the finite sum for k = -1/2 - s against q^(1/16) prod (1 - q^(1/2-j))
    generalized:       sum_{j=0}^{M-k} against prod (1 - q^j)^-1 sum_{j<N} q^(j^2 - jk)
    """
    from .finite import build_module, conventional_sign

    k = as_fraction(k)
    M = N // 2
    if formula == "c-prime":
        if sign_half is None:
            sign_half = conventional_sign(N, k, "prime")
        mod = build_module(N, k, "prime", sign_half)
        R = mod.root
        return GaussSumConstants(formula, N, M, k, c_prime(R, k, N), mod.integral(mod.gaussian_vector(1)))
    if formula == "c-prime-negative":
        s = int(-k - HALF)
        R = RootContext(N, sign_half if sign_half is not None else -1)
        return GaussSumConstants(formula, N, M, k, c_prime(R, k), jackson_partial_sum(R, k, s + 1, 2 * s + 1), s=s)
    if formula == "c-double-prime":
        R = RootContext(N, sign_half if sign_half is not None else 1)
        if k.denominator == 1:
            # q^((L-K)(L+K)) prod_{j=k+1}^M (1 - q^j); the sum vanishes for N = 2M, M - k odd
            value = R.zero()
            if N % 2 or (M - k) % 2 == 0:
                value = R.q_pow(lk_exponent(N, int(k)))
                for j in range(int(k) + 1, M + 1):
                    value = value * _one_minus(R, j)
            return GaussSumConstants(formula, N, M, k, value, even_partial_sum(R, k, M - int(k)),
                                     L=l_square_exponent(N))
        return GaussSumConstants(formula, N, M, k, halfint_prefactor(R, k) * c_double_prime(R, k),
                                 even_partial_sum(R, k, int(Fraction(N, 2) - k)))
    if formula == "generalized":
        R = RootContext(N, sign_half if sign_half is not None else 1)
        G = R.zero()
        for j in range(N):
            G = G + R.q_pow(j * j - j * k)
        return GaussSumConstants(formula, N, M, k, G / q_factorial(R, int(k)), even_partial_sum(R, k, M - int(k)))
    raise ValueError(f"unknown formula {formula!r}; known: {GAUSS_FORMULAS}")
