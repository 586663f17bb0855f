"""Laurent polynomials in X = q^x, the Demazure-Lusztig operators and formal X-series.

A `Mode` fixes where scalars live:
  * formal  - Q(u, v), u = q^(1/4), v = t^(1/2), k symbolic;
  * k       - Q(u) with t = q^k, k in (1/2)Z;
  * root    - Q(zeta) at a root of unity, k in (1/2)Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from numbers import Rational

from .cyclotomic import CycNumber, RootContext, specialize_at_root
from .scalars import (
    U,
    V,
    QSeries,
    QTScalar,
    RationalFunction,
    as_fraction,
    as_qt,
    series_expand,
    specialize_k,
)


class NotDivisible(ArithmeticError):
    """A divided difference did not come out as an exact Laurent polynomial."""


class UnboundedSupport(ValueError):
    """An X-series would need infinitely many X-powers at the requested precision."""


@dataclass(frozen=True)
class Mode:
    kind: str  # "formal", "k" or "root"
    k: Fraction | None = None
    root: RootContext | None = None

    def __post_init__(self):
        if self.kind not in ("formal", "k", "root"):
            raise ValueError(f"unknown mode {self.kind}")
        if self.kind != "formal":
            if self.k is None or (self.k * 2).denominator != 1:
                raise ValueError("k must be given in (1/2)Z outside formal mode")
        if self.kind == "root" and self.root is None:
            raise ValueError("root mode needs a RootContext")

    @staticmethod
    def formal() -> "Mode":
        return Mode("formal")

    @staticmethod
    def at_k(k) -> "Mode":
        return Mode("k", as_fraction(k))

    @staticmethod
    def at_root(root: RootContext, k) -> "Mode":
        return Mode("root", as_fraction(k), root)

    def __str__(self):
        if self.kind == "formal":
            return "formal"
        if self.kind == "k":
            return f"k={self.k}"
        return f"root N={self.root.N} sign={self.root.sign_half:+d} k={self.k}"

    # scalar constructors
    def convert(self, x):
        """Map a formal scalar (QTScalar or rational) into this mode."""
        if self.kind == "formal":
            return as_qt(x) if not isinstance(x, QTScalar) else x
        if self.kind == "k":
            if isinstance(x, (int, Rational)):
                return QTScalar(x)
            return specialize_k(x, self.k)
        if isinstance(x, CycNumber):
            return x
        return specialize_at_root(x, self.root, self.k)

    def one(self):
        return self.root.one() if self.kind == "root" else QTScalar(1)

    def zero(self):
        return self.root.zero() if self.kind == "root" else QTScalar(0)

    def u_pow(self, e: int):
        """(q^(1/4))^e."""
        if self.kind == "root":
            return self.root.q_pow(Fraction(e, 4))
        return QTScalar.monomial((e, 0))

    def q_pow(self, a):
        a4 = as_fraction(a) * 4
        if a4.denominator != 1:
            if self.kind == "root":
                return self.root.q_pow(a)
            raise ValueError(f"q^{a} is not a power of q^(1/4)")
        return self.u_pow(int(a4))

    def v_pow(self, e: int):
        """(t^(1/2))^e; t^(1/2) = (q^(1/4))^(2k) outside formal mode."""
        if self.kind == "formal":
            return QTScalar.monomial((0, e))
        return self.u_pow(int(2 * self.k * e))

    def t_pow(self, b):
        b2 = as_fraction(b) * 2
        if b2.denominator != 1:
            raise ValueError(f"t^{b} is not a power of t^(1/2)")
        return self.v_pow(int(b2))

    @property
    def c(self):
        """t^(1/2) - t^(-1/2)."""
        return self.v_pow(1) - self.v_pow(-1)

    def x_value(self, point):
        """X = q^x at a point given as a rational x (k fixed) or a SpectralPoint."""
        if isinstance(point, SpectralPoint):
            if self.kind == "formal":
                return self.q_pow(point.a) * self.v_pow(point.b)
            point = point.value(self.k)
        return self.q_pow(as_fraction(point))

    def with_k(self, k) -> "Mode":
        if self.kind == "formal":
            raise ValueError("formal mode has symbolic k")
        return Mode(self.kind, as_fraction(k), self.root)


@dataclass(frozen=True)
class SpectralPoint:
    """The point x = a + b * k / 2."""

    a: Fraction
    b: int

    def value(self, k) -> Fraction:
        return as_fraction(self.a) + self.b * as_fraction(k) / 2

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        mult = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        return f"{self.a} {sign} {mult}k/2"


def sharp(n: int) -> SpectralPoint:
    """n# = (n + sgn(n - 1/2) k) / 2."""
    return SpectralPoint(Fraction(n, 2), 1 if n >= 1 else -1)


def minus_k_half() -> SpectralPoint:
    return SpectralPoint(Fraction(0), -1)


def _is_zero(c) -> bool:
    if isinstance(c, (RationalFunction, CycNumber)):
        return c.is_zero()
    return c == 0


class LaurentPoly:
    """Finite sum of c_m X^m with scalars in a fixed Mode."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: dict, mode: Mode):
        self.mode = mode
        self.terms = {m: c for m, c in terms.items() if not _is_zero(c)}

    @classmethod
    def monomial(cls, m: int, mode: Mode, coeff=None):
        return cls({m: mode.one() if coeff is None else coeff}, mode)

    @classmethod
    def constant(cls, c, mode: Mode):
        return cls({0: mode.convert(c)}, mode)

    @classmethod
    def from_formal(cls, terms: dict, mode: Mode):
        return cls({m: mode.convert(c) for m, c in terms.items()}, mode)

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            raise TypeError("expected a LaurentPoly")
        if other.mode != self.mode:
            raise ValueError(f"mode mismatch: {self.mode} vs {other.mode}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.mode)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return LaurentPoly(out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return LaurentPoly({m: x * c for m, x in self.terms.items()}, self.mode)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out[a + b] + x * y if a + b in out else x * y
        return LaurentPoly(out, self.mode)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        result = LaurentPoly.monomial(0, self.mode)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.mode)
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: int):
        return self.terms.get(m, self.mode.zero())

    def degree_range(self):
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by X^m."""
        return LaurentPoly({a + m: c for a, c in self.terms.items()}, self.mode)

    def map_coefficients(self, fn, mode: Mode | None = None) -> "LaurentPoly":
        return LaurentPoly({m: fn(c) for m, c in self.terms.items()}, mode or self.mode)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*X^{m}" for m, c in sorted(self.terms.items()))


# ---------------------------------------------------------------- operators


def s_op(f: LaurentPoly) -> LaurentPoly:
    """(s f)(x) = f(-x)."""
    return LaurentPoly({-m: c for m, c in f.terms.items()}, f.mode)


def p_op(f: LaurentPoly, power: int = 1) -> LaurentPoly:
    """(p f)(x) = f(x + 1/2): X^m -> q^(m/2) X^m."""
    mode = f.mode
    return LaurentPoly({m: c * mode.u_pow(2 * m * power) for m, c in f.terms.items()}, mode)


def divide_by_x2_minus(g: LaurentPoly, a) -> LaurentPoly:
    """Exact quotient g / (X^2 - a); raises NotDivisible otherwise."""
    if g.is_zero():
        return g
    lo, hi = g.degree_range()
    h = {}
    for m in range(hi, lo + 1, -1):
        rhs = g.coefficient(m)
        if m in h:
            rhs = rhs + a * h[m]
        if not _is_zero(rhs):
            h[m - 2] = rhs
    for m in (lo, lo + 1):
        lhs = g.coefficient(m)
        if m in h:
            lhs = lhs + a * h[m]
        if not _is_zero(lhs):
            raise NotDivisible(f"remainder at X^{m} dividing by X^2 - {a}")
    return LaurentPoly(h, g.mode)


def divided_difference(f: LaurentPoly) -> LaurentPoly:
    """(s f - f) / (X^2 - 1)."""
    return divide_by_x2_minus(s_op(f) - f, 1)


def T_hat(f: LaurentPoly) -> LaurentPoly:
    """t^(1/2) s + (X^2 - 1)^(-1) (t^(1/2) - t^(-1/2)) (s - 1)."""
    mode = f.mode
    return s_op(f).scale(mode.v_pow(1)) + divided_difference(f).scale(mode.c)


def T_hat_inv(f: LaurentPoly) -> LaurentPoly:
    return T_hat(f) - f.scale(f.mode.c)


def Y_hat(f: LaurentPoly) -> LaurentPoly:
    """Y = s p T: apply T first, then p, then s."""
    return s_op(p_op(T_hat(f)))


def Y_hat_inv(f: LaurentPoly) -> LaurentPoly:
    return T_hat_inv(p_op(s_op(f), -1))


def X_mul(f: LaurentPoly, m: int = 1) -> LaurentPoly:
    return f.shift(m)


def shift_operator(f: LaurentPoly) -> LaurentPoly:
    """S = (X - X^(-1))^(-1) (p^(-1) - p)."""
    g = p_op(f, -1) - p_op(f, 1)
    return divide_by_x2_minus(g.shift(1), 1)


def T0_hat(f: LaurentPoly) -> LaurentPoly:
    """t^(1/2) s0 + (q X^(-2) - 1)^(-1) (t^(1/2) - t^(-1/2)) (s0 - 1), s0 = s p^2."""
    mode = f.mode
    s0f = s_op(p_op(f, 2))
    # (q X^-2 - 1)^(-1) g = -X^2 (X^2 - q)^(-1) g
    quot = divide_by_x2_minus((s0f - f).shift(2), mode.q_pow(1))
    return s0f.scale(mode.v_pow(1)) - quot.scale(mode.c)


def evaluate(f: LaurentPoly, point):
    """f at x = point (rational, or a SpectralPoint a + b k/2)."""
    mode = f.mode
    X = mode.x_value(point)
    total = mode.zero()
    for m, c in f.terms.items():
        total = total + c * (X ** m)
    return total


def star_poly(f: LaurentPoly) -> LaurentPoly:
    """Apply the star involution: X -> X^(-1) and q, t -> q^(-1), t^(-1) on coefficients."""
    from .scalars import star

    mode = f.mode
    if mode.kind == "root":
        conv = lambda c: c.conj()
    else:
        conv = star
    return LaurentPoly({-m: conv(c) for m, c in f.terms.items()}, mode)


def specialize_poly(f: LaurentPoly, mode: Mode) -> LaurentPoly:
    """Move a formal Laurent polynomial into another mode."""
    if f.mode.kind != "formal":
        if f.mode == mode:
            return f
        raise ValueError("only formal polynomials can be specialized")
    return LaurentPoly({m: mode.convert(c) for m, c in f.terms.items()}, mode)


# ---------------------------------------------------------------- X-series


class XSeries:
    """sum_m c_m X^m with q-series coefficients truncated at a common order.

    Only finitely many m are stored; every omitted coefficient is O(q^order).
    """

    __slots__ = ("coeffs", "L", "order")

    def __init__(self, coeffs: dict, L: int, order):
        self.L = L
        self.order = as_fraction(order)
        self.coeffs = {}
        for m, c in coeffs.items():
            c = c.truncate(self.order)
            if not c.is_zero():
                self.coeffs[m] = c

    @classmethod
    def from_poly(cls, f: LaurentPoly, L: int, order) -> "XSeries":
        if f.mode.kind != "k":
            raise ValueError("X-series need k specialized")
        return cls({m: series_expand(c, L, order) for m, c in f.terms.items()}, L, order)

    def coefficient(self, m):
        c = self.coeffs.get(m)
        return c if c is not None else QSeries.zero(self.L, self.order)

    def __mul__(self, other: "XSeries") -> "XSeries":
        order = min(self.order, other.order)
        L = max(self.L, other.L)
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                vx, vy = x.valuation(), y.valuation()
                if vx + vy >= order:
                    continue
                z = x * y
                out[a + b] = out[a + b] + z if a + b in out else z
        return XSeries(out, L, order)

    def __add__(self, other: "XSeries") -> "XSeries":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return XSeries(out, max(self.L, other.L), min(self.order, other.order))

    def scale(self, c) -> "XSeries":
        return XSeries({m: x * c for m, x in self.coeffs.items()}, self.L, self.order)

    def const_term(self) -> QSeries:
        return self.coefficient(0)

    def shift(self, m: int) -> "XSeries":
        return XSeries({a + m: c for a, c in self.coeffs.items()}, self.L, self.order)

    def p_op(self, power: int = 1) -> "XSeries":
        return XSeries({m: c.shift(Fraction(m * power, 2)) for m, c in self.coeffs.items()}, self.L, self.order)

    def support(self):
        return sorted(self.coeffs)

    def equals(self, other: "XSeries", window=None) -> bool:
        order = min(self.order, other.order)
        keys = set(self.coeffs) | set(other.coeffs)
        if window is not None:
            keys = {m for m in keys if abs(m) <= window}
        return all(self.coefficient(m).equals(other.coefficient(m), order) for m in keys)


def const_term(*factors) -> QSeries:
    """Constant term in X of a product of LaurentPolys and XSeries."""
    series = [f for f in factors if isinstance(f, XSeries)]
    polys = [f for f in factors if isinstance(f, LaurentPoly)]
    if not series:
        raise ValueError("const_term needs at least one XSeries factor")
    L = max(s.L for s in series)
    order = min(s.order for s in series)
    acc = series[0]
    for s in series[1:]:
        acc = acc * s
    for f in polys:
        acc = acc * XSeries.from_poly(f, L, order)
    return acc.const_term()


def _y_series(mode: Mode, L: int, order, num_shift: int, den_shift: int) -> list:
    """Coefficients of y^n in prod_{j>=0} (1 - q^(j+a) y) / (1 - t q^(j+b) y).

    a = num_shift, b = den_shift.  Returned as a list of QSeries, all
    truncated at `order`; the length is chosen so that omitted terms are O(q^order).
    """
    k = mode.k
    D = as_fraction(order)
    # valuation of the y^n coefficient grows at least like slope * (n - 1)
    slope = min(Fraction(1), k + den_shift) if num_shift == 0 else min(Fraction(num_shift), k + den_shift)
    if slope <= 0:
        raise UnboundedSupport(f"no X-truncation at k={k}")
    nmax = int(ceil(D / slope)) + 2
    one = QSeries.monomial(0, L, D)
    coeffs = [one] + [QSeries.zero(L, D) for _ in range(nmax)]
    j = 0
    while j + num_shift < D:
        c = Fraction(j + num_shift)
        # multiply by (1 - q^c y)
        for n in range(nmax, 0, -1):
            coeffs[n] = coeffs[n] - coeffs[n - 1].shift(c)
        j += 1
    j = 0
    while j + den_shift + k < D:
        c = Fraction(j + den_shift) + k
        # divide by (1 - q^c y): h_n = g_n + q^c h_(n-1)
        for n in range(1, nmax + 1):
            coeffs[n] = coeffs[n] + coeffs[n - 1].shift(c)
        j += 1
    return [c.truncate(D) for c in coeffs]


def _combine(pos: list, neg: list, L, order) -> XSeries:
    """A(X^2) * B(X^-2) for y-series A = pos, B = neg."""
    out = {}
    for i, a in enumerate(pos):
        va = a.valuation()
        if va is None:
            continue
        for j, b in enumerate(neg):
            vb = b.valuation()
            if vb is None or va + vb >= order:
                continue
            m = 2 * (i - j)
            z = a * b
            out[m] = out[m] + z if m in out else z
    return XSeries(out, L, order)


def _lattice_for(k) -> int:
    return 4 if (as_fraction(k) * 2).denominator == 1 else 16


def mu_series(mode: Mode, order, L: int | None = None) -> XSeries:
    """prod_j (1 - q^j X^2)(1 - q^(j+1) X^-2) / ((1 - t q^j X^2)(1 - t q^(j+1) X^-2))."""
    if mode.kind != "k":
        raise UnboundedSupport("mu as an X-series needs k specialized to a positive value")
    L = L or _lattice_for(mode.k)
    pos = _y_series(mode, L, order, 0, 0)
    neg = _y_series(mode, L, order, 1, 1)
    return _combine(pos, neg, L, order)


def delta_series(mode: Mode, order, L: int | None = None) -> XSeries:
    """prod_j (1 - q^j X^2)(1 - q^j X^-2) / ((1 - t q^j X^2)(1 - t q^j X^-2))."""
    if mode.kind != "k":
        raise UnboundedSupport("delta as an X-series needs k specialized to a positive value")
    L = L or _lattice_for(mode.k)
    a = _y_series(mode, L, order, 0, 0)
    return _combine(a, a, L, order)


def gaussian_series(sign: int, order, L: int = 4, window: int | None = None) -> XSeries:
    """Expansion of q^(sign x^2): sum_n q^(-sign n^2/4) X^n.

    sign = -1 gives the q-adically convergent theta series of q^(-x^2); for
    sign = +1 the valuations decrease without bound, so an explicit X-window
    is required.
    """
    D = as_fraction(order)
    if sign == -1:
        nmax = 0
        while Fraction((nmax + 1) ** 2, 4) < D:
            nmax += 1
        if window is not None:
            nmax = min(nmax, window)
    elif sign == 1:
        if window is None:
            raise UnboundedSupport("q^(x^2) has coefficients of unbounded negative valuation; pass a window")
        nmax = window
    else:
        raise ValueError("sign must be +1 or -1")
    coeffs = {n: QSeries.monomial(Fraction(-sign * n * n, 4), L, D) for n in range(-nmax, nmax + 1)}
    return XSeries(coeffs, L, D)


def shift_operator_series(f: XSeries) -> XSeries:
    """S on a q-adically convergent X-series, solving (X - X^-1) g = (p^-1 - p) f from the top."""
    h = f.p_op(-1) + f.p_op(1).scale(-1)
    hx = h.shift(1)  # (X^2 - 1) g = X h
    if not hx.coeffs:
        return hx
    lo, hi = min(hx.coeffs), max(hx.coeffs)
    g = {}
    for m in range(hi, lo + 1, -1):
        rhs = hx.coefficient(m)
        if m in g:
            rhs = rhs + g[m]
        if not rhs.is_zero():
            g[m - 2] = rhs
    return XSeries(g, f.L, f.order)
