"""Exact scalars: rational functions in u = q^(1/4), v = t^(1/2) and truncated q-series.

Rational functions are stored as reduced pairs of integer polynomials (python-flint
multivariate polynomials).  Laurent monomials live in the numerator or the
denominator, so every value has a unique canonical form: coprime numerator and
denominator, denominator with positive leading coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import flint


class ScalarError(ArithmeticError):
    """Base class for scalar failures."""


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class NotASeries(ScalarError):
    """The requested expansion does not exist at the given lattice/precision."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational number")


class RationalFunction:
    """Element of Q(gens) for a fixed flint polynomial context."""

    __slots__ = ("num", "den")
    CTX: "flint.fmpz_mpoly_ctx" = None

    def __init__(self, num=0, den=None, *, reduced=False):
        ctx = self.CTX
        if isinstance(num, RationalFunction):
            if den is not None:
                raise TypeError("den given with a RationalFunction numerator")
            self.num, self.den = num.num, num.den
            return
        if not isinstance(num, flint.fmpz_mpoly):
            f = as_fraction(num)
            num = ctx.constant(f.numerator)
            den = ctx.constant(f.denominator) if den is None else den * f.denominator
        if den is None:
            den = ctx.constant(1)
        elif not isinstance(den, flint.fmpz_mpoly):
            f = as_fraction(den)
            num = num * f.denominator
            den = ctx.constant(f.numerator)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not reduced:
            if num.is_zero():
                den = ctx.constant(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    # construction helpers
    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def gens(cls):
        return tuple(cls._make(g, cls.CTX.constant(1)) for g in cls.CTX.gens())

    @classmethod
    def monomial(cls, exps, coeff=1):
        """coeff * prod gen_i^exps[i], negative exponents allowed."""
        ctx = cls.CTX
        pos = tuple(max(e, 0) for e in exps)
        neg = tuple(max(-e, 0) for e in exps)
        f = as_fraction(coeff)
        if f == 0:
            return cls(0)
        num = ctx.from_dict({pos: f.numerator})
        den = ctx.from_dict({neg: f.denominator})
        return cls(num, den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.CTX is not self.CTX:
                raise TypeError("mixing rational functions over different variables")
            return other
        if isinstance(other, (int, Rational)):
            return type(self)(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return self._make(a + c, b)
        if b == d:
            n = a + c
            return type(self)(n, b)
        g = b.gcd(d)
        if g.is_one():
            return type(self)(a * d + c * b, b * d, reduced=True)._fix_sign()
        b1 = b / g
        d1 = d / g
        n = a * d1 + c * b1
        den = b1 * d
        if n.is_zero():
            return type(self)(0)
        h = n.gcd(g)
        if not h.is_one():
            n = n / h
            den = den / h
        return self._make(n, den)._fix_sign()

    __radd__ = __add__

    def _fix_sign(self):
        if self.den.leading_coefficient() < 0:
            self.num, self.den = -self.num, -self.den
        if self.num.is_zero():
            self.den = self.CTX.constant(1)
        return self

    def __neg__(self):
        return self._make(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return type(self)(0)
            return type(self)(self.num * other, self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero() or c.is_zero():
            return type(self)(0)
        if b.is_one() and d.is_one():
            return self._make(a * c, b)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a = a / g1
            d = d / g1
        if not g2.is_one():
            c = c / g2
            b = b / g2
        return self._make(a * c, b * d)._fix_sign()

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return self._make(self.den, self.num)._fix_sign()

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
        if not isinstance(e, int):
            raise TypeError("integer exponents only")
        if e < 0:
            return self.inverse() ** (-e)
        return self._make(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self.num.leading_coefficient()) if not self.num.is_zero() else 0,
                        int(self.den.leading_coefficient()))

    def __repr__(self):
        if self.den.is_one():
            return f"{type(self).__name__}({self.num})"
        return f"{type(self).__name__}(({self.num})/({self.den}))"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def evaluate(self, values, one=None):
        """Substitute values for the generators (any ring supporting + * / and int scalars)."""
        n = _eval_poly(self.num, values, one)
        d = _eval_poly(self.den, values, one)
        return n / d


def _eval_poly(p, values, one):
    total = None
    cache = {}
    for exps, c in p.terms():
        term = None
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = values[i] ** e
                term = cache[key] if term is None else term * cache[key]
        c = int(c)
        if term is None:
            term = c if one is None else one * c
        else:
            term = term * c
        total = term if total is None else total + term
    if total is None:
        return 0 if one is None else one * 0
    return total


_QT_CTX = flint.fmpz_mpoly_ctx.get(("u", "v"), "deglex")
_TAU_CTX = flint.fmpz_mpoly_ctx.get(("tau",), "deglex")


class QTScalar(RationalFunction):
    """Element of Q(u, v) with u = q^(1/4) and v = t^(1/2).

    After specializing k the value lives in Q(u) and simply has no v.
    """

    __slots__ = ()
    CTX = _QT_CTX

    def is_univariate(self) -> bool:
        return self.num.degrees()[1] == 0 and self.den.degrees()[1] == 0


class TauScalar(RationalFunction):
    """Element of Q(tau) with tau = q^(k/4), used for series with symbolic k."""

    __slots__ = ()
    CTX = _TAU_CTX


U, V = QTScalar.gens()
(TAU,) = TauScalar.gens()


def qpow(a) -> QTScalar:
    """q^a for a in (1/4)Z."""
    a = as_fraction(a) * 4
    if a.denominator != 1:
        raise ValueError(f"q^{a / 4} is not a power of q^(1/4)")
    return QTScalar.monomial((int(a), 0))


def tpow(b) -> QTScalar:
    """t^b for b in (1/2)Z."""
    b = as_fraction(b) * 2
    if b.denominator != 1:
        raise ValueError(f"t^{b / 2} is not a power of t^(1/2)")
    return QTScalar.monomial((0, int(b)))


def qt_monomial(qexp, texp, coeff=1) -> QTScalar:
    """coeff * q^qexp * t^texp."""
    a = as_fraction(qexp) * 4
    b = as_fraction(texp) * 2
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("exponent off the (1/4, 1/2) lattice")
    return QTScalar.monomial((int(a), int(b)), coeff)


def as_qt(x) -> QTScalar:
    if isinstance(x, QTScalar):
        return x
    return QTScalar(x)


def _poly_map_exponents(p, fn, ctx):
    """Apply fn to exponent tuples of p, then clear negative exponents.

    Returns (poly, shift) with p(mapped) = poly * gen^shift (shift may be negative).
    """
    terms = [(fn(e), int(c)) for e, c in p.terms()]
    nv = len(ctx.gens())
    if not terms:
        return ctx.constant(0), (0,) * nv
    mins = tuple(min(t[0][i] for t in terms) for i in range(nv))
    d = {}
    for e, c in terms:
        key = tuple(e[i] - mins[i] for i in range(nv))
        d[key] = d.get(key, 0) + c
    d = {k: c for k, c in d.items() if c}
    return ctx.from_dict(d) if d else ctx.constant(0), mins


def _from_shifted(cls, num, nshift, den, dshift):
    shift = tuple(a - b for a, b in zip(nshift, dshift))
    mono = cls.monomial(shift)
    return cls(num, den) * mono


def star(x):
    """q -> 1/q, t -> 1/t (u -> 1/u, v -> 1/v); rationals fixed."""
    if not isinstance(x, RationalFunction):
        return x
    cls = type(x)
    ctx = cls.CTX
    n, ns = _poly_map_exponents(x.num, lambda e: tuple(-a for a in e), ctx)
    d, ds = _poly_map_exponents(x.den, lambda e: tuple(-a for a in e), ctx)
    return _from_shifted(cls, n, ns, d, ds)


def specialize_k(x: QTScalar, k) -> QTScalar:
    """Substitute t = q^k, i.e. v = u^(2k); k must lie in (1/2)Z.

    The reduced fraction is specialized along the curve, so removable
    singularities disappear; an identically vanishing denominator raises.
    """
    k2 = as_fraction(k) * 2
    if k2.denominator != 1:
        raise ValueError(f"k={k} is not in (1/2)Z")
    k2 = int(k2)
    x = as_qt(x)
    fn = lambda e: (e[0] + k2 * e[1], 0)
    n, ns = _poly_map_exponents(x.num, fn, _QT_CTX)
    d, ds = _poly_map_exponents(x.den, fn, _QT_CTX)
    if d.is_zero():
        raise DivisionByZero(f"denominator vanishes identically at k={k}")
    return _from_shifted(QTScalar, n, ns, d, ds)


def shift_k(x: QTScalar, dk) -> QTScalar:
    """Substitute t -> t q^dk (v -> v u^(2 dk)), i.e. k -> k + dk."""
    k2 = as_fraction(dk) * 2
    if k2.denominator != 1:
        raise ValueError(f"shift {dk} is not in (1/2)Z")
    k2 = int(k2)
    x = as_qt(x)
    fn = lambda e: (e[0] + k2 * e[1], e[1])
    n, ns = _poly_map_exponents(x.num, fn, _QT_CTX)
    d, ds = _poly_map_exponents(x.den, fn, _QT_CTX)
    return _from_shifted(QTScalar, n, ns, d, ds)


# ---------------------------------------------------------------- q-series


class QSeries:
    """Truncated Laurent series in q^(1/L): sum c_e q^(e/L), valid for e/L < order.

    Rational coefficients are held in a flint polynomial; coefficients in Q(tau)
    (symbolic k) are held in a plain list.
    """

    __slots__ = ("L", "prec", "val", "data")

    def __init__(self, L: int, prec: int, val: int, data):
        # prec: absolute precision in lattice units; data[i] is the coefficient of q^((val+i)/L)
        self.L = L
        self.prec = prec
        self.val = val
        self.data = data
        self._trim()

    # representation helpers
    @property
    def is_rational(self) -> bool:
        return isinstance(self.data, flint.fmpq_poly)

    @property
    def order(self) -> Fraction:
        return Fraction(self.prec, self.L)

    def _length(self):
        return self.data.length() if self.is_rational else len(self.data)

    def _coeff(self, i):
        if self.is_rational:
            return Fraction(int(self.data[i].p), int(self.data[i].q)) if i < self.data.length() else Fraction(0)
        return self.data[i] if i < len(self.data) else 0

    def _trim(self):
        n = max(self.prec - self.val, 0)
        if self.is_rational:
            if self.data.length() > n:
                self.data = self.data.truncate(n) if n > 0 else flint.fmpq_poly(0)
        else:
            if len(self.data) > n:
                self.data = self.data[:n]
            while self.data and _is_zero(self.data[-1]):
                self.data.pop()

    @classmethod
    def zero(cls, L, order, rational=True):
        prec = _prec_units(order, L)
        return cls(L, prec, 0, flint.fmpq_poly(0) if rational else [])

    @classmethod
    def monomial(cls, exponent, L, order, coeff=1):
        e = as_fraction(exponent) * L
        if e.denominator != 1:
            raise NotASeries(f"q^{exponent} is not on the 1/{L} lattice")
        prec = _prec_units(order, L)
        if isinstance(coeff, RationalFunction):
            return cls(L, prec, int(e), [coeff])
        f = as_fraction(coeff)
        return cls(L, prec, int(e), flint.fmpq_poly([flint.fmpq(f.numerator, f.denominator)]))

    @classmethod
    def from_dict(cls, terms: dict, L, order):
        prec = _prec_units(order, L)
        if not terms:
            return cls.zero(L, order)
        units = {}
        for e, c in terms.items():
            u = as_fraction(e) * L
            if u.denominator != 1:
                raise NotASeries(f"q^{e} is not on the 1/{L} lattice")
            units[int(u)] = units.get(int(u), 0) + c
        val = min(units)
        generic = any(isinstance(c, RationalFunction) for c in units.values())
        n = max(units) - val + 1
        if generic:
            data = [0] * n
            for u, c in units.items():
                data[u - val] = c
            return cls(L, prec, val, data)
        data = [flint.fmpq(0)] * n
        for u, c in units.items():
            f = as_fraction(c)
            data[u - val] = flint.fmpq(f.numerator, f.denominator)
        return cls(L, prec, val, flint.fmpq_poly(data))

    def to_dict(self) -> dict:
        out = {}
        for i in range(self._length()):
            c = self._coeff(i)
            if not _is_zero(c):
                out[Fraction(self.val + i, self.L)] = c
        return out

    def coefficient(self, exponent):
        e = as_fraction(exponent) * self.L
        if e.denominator != 1:
            return Fraction(0) if self.is_rational else 0
        e = int(e)
        if e >= self.prec:
            raise NotASeries(f"coefficient of q^{exponent} is beyond the precision {self.order}")
        i = e - self.val
        if i < 0:
            return Fraction(0) if self.is_rational else 0
        return self._coeff(i)

    def valuation(self):
        for i in range(self._length()):
            if not _is_zero(self._coeff(i)):
                return Fraction(self.val + i, self.L)
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    # lattice changes
    def refine(self, L2: int) -> "QSeries":
        if L2 % self.L:
            raise ValueError(f"lattice 1/{L2} does not refine 1/{self.L}")
        r = L2 // self.L
        if r == 1:
            return self
        if self.is_rational:
            coeffs = self.data.coeffs()
            new = [flint.fmpq(0)] * ((len(coeffs) - 1) * r + 1) if coeffs else []
            for i, c in enumerate(coeffs):
                new[i * r] = c
            data = flint.fmpq_poly(new) if new else flint.fmpq_poly(0)
        else:
            data = [0] * ((len(self.data) - 1) * r + 1) if self.data else []
            for i, c in enumerate(self.data):
                data[i * r] = c
        return QSeries(L2, self.prec * r, self.val * r, data)

    def _align(self, other):
        if not isinstance(other, QSeries):
            return self, QSeries.monomial(0, self.L, self.order, other) if not _is_zero(other) else QSeries.zero(self.L, self.order, self.is_rational)
        if self.L == other.L:
            return self, other
        L = _lcm(self.L, other.L)
        return self.refine(L), other.refine(L)

    def _generic(self):
        if not self.is_rational:
            return self
        return QSeries(self.L, self.prec, self.val, [c for c in self.data.coeffs()])

    # arithmetic
    def __add__(self, other):
        a, b = self._align(other)
        if a.is_rational != b.is_rational:
            a, b = a._generic(), b._generic()
        prec = min(a.prec, b.prec)
        val = min(a.val, b.val)
        if a.is_rational:
            data = a.data.left_shift(a.val - val) + b.data.left_shift(b.val - val)
        else:
            n = max(len(a.data) + a.val, len(b.data) + b.val) - val
            data = [0] * n
            for i, c in enumerate(a.data):
                data[i + a.val - val] = data[i + a.val - val] + c
            for i, c in enumerate(b.data):
                data[i + b.val - val] = data[i + b.val - val] + c
        return QSeries(a.L, prec, val, data)

    __radd__ = __add__

    def __neg__(self):
        if self.is_rational:
            return QSeries(self.L, self.prec, self.val, -self.data)
        return QSeries(self.L, self.prec, self.val, [-c for c in self.data])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        """Multiply by a scalar coefficient."""
        if self.is_rational and not isinstance(c, RationalFunction):
            f = as_fraction(c)
            return QSeries(self.L, self.prec, self.val, self.data * flint.fmpq(f.numerator, f.denominator))
        g = self._generic()
        return QSeries(self.L, self.prec, self.val, [x * c for x in g.data])

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent (precision moves with it)."""
        e = as_fraction(exponent) * self.L
        if e.denominator != 1:
            raise NotASeries(f"q^{exponent} is not on the 1/{self.L} lattice")
        e = int(e)
        data = self.data if self.is_rational else list(self.data)
        return QSeries(self.L, self.prec + e, self.val + e, data)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b = self._align(other)
        # absolute precision of a product: min(prec_a + val_b, prec_b + val_a)
        va, vb = a._true_val(), b._true_val()
        if va is None or vb is None:
            prec = min(a.prec + (vb if vb is not None else b.val), b.prec + (va if va is not None else a.val))
            return QSeries.zero_units(a.L, prec, a.is_rational and b.is_rational)
        prec = min(a.prec + vb, b.prec + va)
        val = a.val + b.val
        n = prec - val
        if n <= 0:
            return QSeries.zero_units(a.L, prec, a.is_rational and b.is_rational)
        if a.is_rational and b.is_rational:
            data = a.data.mul_low(b.data, n) if hasattr(a.data, "mul_low") else (a.data * b.data).truncate(n)
        else:
            a, b = a._generic(), b._generic()
            data = [0] * min(n, len(a.data) + len(b.data) - 1)
            for i, x in enumerate(a.data):
                if _is_zero(x):
                    continue
                for j in range(min(len(b.data), n - i)):
                    y = b.data[j]
                    if not _is_zero(y):
                        data[i + j] = data[i + j] + x * y
        return QSeries(a.L, prec, val, data)

    __rmul__ = __mul__

    @classmethod
    def zero_units(cls, L, prec, rational=True):
        return cls(L, prec, 0, flint.fmpq_poly(0) if rational else [])

    def _true_val(self):
        for i in range(self._length()):
            if not _is_zero(self._coeff(i)):
                return self.val + i
        return None

    def inverse(self) -> "QSeries":
        v = self._true_val()
        if v is None:
            raise DivisionByZero("inverse of a zero series")
        # relative precision of the unit part
        rel = self.prec - v
        i0 = v - self.val
        if self.is_rational:
            unit = self.data.right_shift(i0) if i0 else self.data
            data = _inverse_mod_power(unit, rel)
        else:
            unit = self.data[i0:]
            c0inv = 1 / unit[0]
            data = [0] * rel
            data[0] = c0inv
            for n in range(1, rel):
                acc = 0
                for j in range(1, min(n, len(unit) - 1) + 1):
                    if not _is_zero(unit[j]):
                        acc = acc + unit[j] * data[n - j]
                data[n] = -acc * c0inv
        # inverse of q^v * unit is q^-v * unit^-1, known to relative precision rel
        return QSeries(self.L, rel - v, -v, data)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self.scale(1 / other if isinstance(other, RationalFunction) else 1 / as_fraction(other))

    def __rtruediv__(self, other):
        return self.inverse().scale(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return QSeries.monomial(0, self.L, self.order, 1)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def truncate(self, order) -> "QSeries":
        prec = min(self.prec, _prec_units(order, self.L))
        data = self.data if self.is_rational else list(self.data)
        return QSeries(self.L, prec, self.val, data)

    def equals(self, other, order=None) -> bool:
        """Coefficientwise equality up to the common precision (or `order`)."""
        d = self - other
        if order is not None:
            d = d.truncate(order)
        return d.is_zero()

    def first_difference(self, other):
        d = self - other
        v = d.valuation()
        return v, (d.coefficient(v) if v is not None else None)

    def __repr__(self):
        terms = sorted(self.to_dict().items())
        shown = " + ".join(f"({c})*q^{e}" for e, c in terms[:6])
        more = " + ..." if len(terms) > 6 else ""
        return f"QSeries[{shown or '0'}{more} + O(q^{self.order})]"


def _inverse_mod_power(f, n):
    """1/f mod x^n by Newton iteration (f(0) != 0)."""
    g = flint.fmpq_poly([1 / f[0]])
    m = 1
    while m < n:
        m = min(2 * m, n)
        e = f.truncate(m).mul_low(g, m)
        g = g.mul_low(2 - e, m)
    return g


def _is_zero(c) -> bool:
    if isinstance(c, RationalFunction):
        return c.is_zero()
    return c == 0


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def _prec_units(order, L):
    o = as_fraction(order) * L
    from math import ceil
    return ceil(o)


def qseries_product(factors, L, order):
    """Multiply an iterable of QSeries (or scalars) at the given lattice and order."""
    acc = QSeries.monomial(0, L, order)
    for f in factors:
        acc = acc * f
    return acc


def series_expand(x, L: int, order) -> QSeries:
    """Expand a rational function of u = q^(1/4) (k already specialized) as a q-series.

    L must be a multiple of 4.  The leading power of u in the denominator is
    extracted explicitly, so units of negative valuation are handled.
    """
    if isinstance(x, (int, Rational)):
        return QSeries.monomial(0, L, order, x) if x != 0 else QSeries.zero(L, order)
    x = as_qt(x)
    if not x.is_univariate():
        raise NotASeries("series_expand needs k specialized; use series_expand_tau for symbolic k")
    if L % 4:
        raise NotASeries(f"powers of q^(1/4) need a lattice 1/L with 4 | L, got L={L}")
    r = L // 4

    nd, dd = {}, {}
    for (a, _), c in x.num.terms():
        nd[Fraction(int(a), 4)] = int(c)
    for (a, _), c in x.den.terms():
        dd[Fraction(int(a), 4)] = int(c)
    if not nd:
        return QSeries.zero(L, order)
    nval, dval = min(nd), min(dd)
    rel = as_fraction(order) - (nval - dval)
    if rel <= 0:
        return QSeries.zero(L, order)
    num = QSeries.from_dict(nd, L, nval + rel)
    den = QSeries.from_dict(dd, L, dval + rel)
    return (num * den.inverse()).truncate(order)


def series_expand_tau(x: QTScalar, L: int, order) -> QSeries:
    """Expand x in Q(u, v) with v = tau^2 kept symbolic: coefficients in Q(tau)."""
    x = as_qt(x)
    if L % 4:
        raise NotASeries(f"powers of q^(1/4) need a lattice 1/L with 4 | L, got L={L}")

    def split(p):
        d = {}
        for (a, b), c in p.terms():
            d.setdefault(a, {})
            d[a][(2 * b,)] = d[a].get((2 * b,), 0) + int(c)
        return {Fraction(int(a), 4): TauScalar(_TAU_CTX.from_dict(m)) for a, m in d.items()}

    nd = split(x.num)
    dd = split(x.den)
    if not nd:
        return QSeries(L, _prec_units(order, L), 0, [])
    nval, dval = min(nd), min(dd)
    rel = as_fraction(order) - (nval - dval)
    num = QSeries.from_dict(nd, L, nval + rel)
    den = QSeries.from_dict(dd, L, dval + rel)
    return (num * den.inverse()).truncate(order)


def tau_monomial_series(qexp, tauexp, L, order, coeff=1) -> QSeries:
    """coeff * q^qexp * tau^tauexp as a one-term series with Q(tau) coefficients."""
    c = TauScalar.monomial((tauexp,), coeff)
    e = as_fraction(qexp) * L
    if e.denominator != 1:
        raise NotASeries(f"q^{qexp} is not on the 1/{L} lattice")
    return QSeries(L, _prec_units(order, L), int(e), [c])
