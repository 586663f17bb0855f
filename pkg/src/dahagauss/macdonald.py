"""Nonsymmetric Macdonald polynomials e_n, spherical polynomials and Rogers polynomials.

e_n is found as the Y-eigenvector with eigenvalue q^(-n#).  In the basis ordered
X^0, X^1, X^-1, X^2, X^-2, ... the operator Y is triangular, so the eigenvector is
obtained by back-substitution; the result is re-checked against Y afterwards.
"""

from __future__ import annotations

from fractions import Fraction

from .polyrep import (
    LaurentPoly,
    Mode,
    SpectralPoint,
    T_hat,
    Y_hat,
    evaluate,
    minus_k_half,
    sharp,
    shift_operator,
    specialize_poly,
    _is_zero,
)
from .scalars import DivisionByZero, shift_k


class SpectrumCollision(ArithmeticError):
    """Two basis monomials share the Y-eigenvalue, so e_n is not determined."""


class NotAnEigenvector(AssertionError):
    pass


def rank(m: int) -> int:
    """Position of X^m in the triangular order 0, 1, -1, 2, -2, ..."""
    return 2 * m - 1 if m > 0 else -2 * m


def from_rank(r: int) -> int:
    return (r + 1) // 2 if r % 2 else -r // 2


def eigenvalue(n: int, mode: Mode):
    """q^(-n#)."""
    pt = sharp(n)
    return mode.q_pow(-pt.a) * mode.v_pow(-pt.b)


_CACHE: dict = {}


def _y_column(m: int, mode: Mode) -> LaurentPoly:
    key = ("Ycol", m, mode)
    if key not in _CACHE:
        _CACHE[key] = Y_hat(LaurentPoly.monomial(m, mode))
    return _CACHE[key]


def macdonald_e(n: int, mode: Mode | None = None, check: bool = True) -> LaurentPoly:
    """Monic e_n = X^n + lower terms with Y e_n = q^(-n#) e_n."""
    mode = mode or Mode.formal()
    key = ("e", n, mode)
    if key in _CACHE:
        return _CACHE[key]
    top = rank(n)
    lam = eigenvalue(n, mode)
    cols = {from_rank(r): _y_column(from_rank(r), mode) for r in range(top + 1)}
    for m, col in cols.items():
        for m2 in col.terms:
            if rank(m2) > rank(m):
                raise AssertionError(f"Y is not triangular: X^{m} -> X^{m2}")
        if col.coefficient(m) != eigenvalue(m, mode):
            raise AssertionError(f"diagonal of Y at X^{m} is not q^(-{m}#)")
    c = {n: mode.one()}
    for r in range(top - 1, -1, -1):
        m = from_rank(r)
        acc = mode.zero()
        for m2, cm2 in c.items():
            a = cols[m2].coefficient(m)
            if not _is_zero(a):
                acc = acc + a * cm2
        if _is_zero(acc):
            continue
        gap = lam - eigenvalue(m, mode)
        if _is_zero(gap):
            raise SpectrumCollision(f"e_{n}: X^{m} has the same Y-eigenvalue in mode {mode}")
        c[m] = acc / gap
    e = LaurentPoly(c, mode)
    if check:
        if Y_hat(e) != e.scale(lam):
            raise NotAnEigenvector(f"e_{n} failed the eigenvalue check")
    _CACHE[key] = e
    return e


def macdonald_e_in(n: int, mode: Mode) -> LaurentPoly:
    """e_n in `mode`, specialized from the formal polynomial when the direct solve collides."""
    try:
        return macdonald_e(n, mode)
    except SpectrumCollision:
        if mode.kind == "formal":
            raise
        return _specialized(("e", n), lambda: macdonald_e(n, Mode.formal()), mode, n)


def _specialized(tag, formal_fn, mode, n):
    key = ("spec",) + tag + (mode,)
    if key not in _CACHE:
        try:
            f = specialize_poly(formal_fn(), mode)
        except DivisionByZero as exc:
            raise SpectrumCollision(f"{tag} has a genuine pole in mode {mode}") from exc
        _CACHE[key] = f
    return _CACHE[key]


def spherical_epsilon(n: int, mode: Mode | None = None) -> LaurentPoly:
    """epsilon_n = e_n / e_n(-k/2)."""
    mode = mode or Mode.formal()
    key = ("eps", n, mode)
    if key not in _CACHE:
        if mode.kind == "formal":
            e = macdonald_e(n, mode)
            _CACHE[key] = e.scale(1 / evaluate(e, minus_k_half()))
        else:
            try:
                e = macdonald_e(n, mode)
                _CACHE[key] = e.scale(1 / evaluate(e, minus_k_half().value(mode.k)))
            except (SpectrumCollision, ZeroDivisionError):
                _CACHE[key] = _specialized(("eps", n), lambda: spherical_epsilon(n, Mode.formal()), mode, n)
    return _CACHE[key]


def rogers_p(n: int, mode: Mode | None = None) -> LaurentPoly:
    """Symmetric p_n = (1 + t^(1/2) T) e_n for n > 0, p_0 = 1."""
    mode = mode or Mode.formal()
    if n < 0:
        raise ValueError("Rogers polynomials are indexed by n >= 0")
    key = ("p", n, mode)
    if key not in _CACHE:
        if n == 0:
            _CACHE[key] = LaurentPoly.monomial(0, mode)
        else:
            try:
                e = macdonald_e(n, mode)
                _CACHE[key] = e + T_hat(e).scale(mode.v_pow(1))
            except SpectrumCollision:
                _CACHE[key] = _specialized(("p", n), lambda: rogers_p(n, Mode.formal()), mode, n)
    return _CACHE[key]


def _point(pt: SpectralPoint, mode: Mode):
    return pt if mode.kind == "formal" else pt.value(mode.k)


def duality_check(m: int, n: int, mode: Mode | None = None) -> bool:
    """epsilon_n(m#) = epsilon_m(n#)."""
    mode = mode or Mode.formal()
    a = evaluate(spherical_epsilon(n, mode), _point(sharp(m), mode))
    b = evaluate(spherical_epsilon(m, mode), _point(sharp(n), mode))
    return a == b


def rogers_duality_check(m: int, n: int, mode: Mode | None = None) -> bool:
    """p_n(m#) p_m(-k/2) = p_m(n#) p_n(-k/2) for m, n >= 0."""
    mode = mode or Mode.formal()
    pm, pn = rogers_p(m, mode), rogers_p(n, mode)
    z = _point(minus_k_half(), mode)
    lhs = evaluate(pn, _point(sharp(m), mode)) * evaluate(pm, z)
    rhs = evaluate(pm, _point(sharp(n), mode)) * evaluate(pn, z)
    return lhs == rhs


def shift_check(n: int, mode: Mode | None = None) -> bool:
    """S p_n^(k) = (q^(-n/2) - q^(n/2)) p_(n-1)^(k+1)."""
    mode = mode or Mode.formal()
    lhs = shift_operator(rogers_p(n, mode))
    if mode.kind == "formal":
        nxt = rogers_p(n - 1, mode).map_coefficients(lambda c: shift_k(c, 1))
    else:
        nxt = rogers_p(n - 1, mode.with_k(mode.k + 1))
        nxt = LaurentPoly(nxt.terms, mode)
    factor = mode.q_pow(Fraction(-n, 2)) - mode.q_pow(Fraction(n, 2))
    return lhs == nxt.scale(factor)


def clear_cache():
    _CACHE.clear()
