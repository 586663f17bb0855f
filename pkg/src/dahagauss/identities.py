"""Registry of q-series and Gaussian-sum identities with independent evaluators.

Each entry builds a list of Checks (left side, right side, comparison kind)
from a parameter dict.  Comparison is exact equality of cyclotomic numbers or
rational functions, coefficientwise equality of truncated q-series through a
given order, or a certified numeric bound on |lhs - rhs| from arb balls.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from flint import acb, arb, ctx

from .cyclotomic import PoleAtRoot, RootContext, numeric_embed
from .finite import (HALF, SectorError, build_generic_module, build_module, conj, conventional_sign,
                     correspondence_isomorphic, mu_bullet, sharp_value)
from .gauss import (c_double_prime, c_prime, classical_sum, even_pairing_constant, even_partial_sum,
                    even_weight, halfint_prefactor, halfint_product, imag_power, jackson_partial_sum, jackson_weight,
                    l_square_exponent, lk_exponent, printed_even_pairing_constant,
                    printed_halfint_prefactor, q_factorial)
from .macdonald import rogers_p, spherical_epsilon
from .polyrep import Mode, evaluate, gaussian_series, mu_series, delta_series
from .scalars import QSeries, QTScalar, as_fraction, series_expand

OUTCOMES = ("verified", "zero-case", "mismatch", "sector-violation", "degenerate")
SUITES = ("generic", "roots", "halfint", "verlinde", "all")
DEFAULT_ORDER = 40
DEFAULT_DIGITS = 50
# extra q-order carried through products with negative valuations
MARGIN = 8


class PrecisionLoss(ArithmeticError):
    """A truncated series ended below the requested comparison order."""


# ---------------------------------------------------------------- checks


@dataclass
class Check:
    """One equation lhs = rhs.  kind is "exact", "series" or "numeric"."""

    label: str
    lhs: object
    rhs: object
    kind: str = "exact"
    order: Fraction | None = None
    tol: object = None

    def difference(self):
        return self.lhs - self.rhs

    def holds(self) -> bool:
        if self.kind == "series":
            if self.lhs.order < self.order or self.rhs.order < self.order:
                raise PrecisionLoss(f"{self.label}: series known only to order "
                                    f"{min(self.lhs.order, self.rhs.order)} < {self.order}")
            return self.lhs.equals(self.rhs, self.order)
        if self.kind == "numeric":
            return bool(abs(self.difference()) < self.tol)
        if isinstance(self.lhs, bool):
            return self.lhs == self.rhs
        return self.lhs == self.rhs

    def is_zero(self) -> bool:
        if self.kind == "series":
            return self.lhs.truncate(self.order).is_zero() and self.rhs.truncate(self.order).is_zero()
        if self.kind == "numeric" or isinstance(self.lhs, bool):
            return False
        return _is_zero(self.lhs) and _is_zero(self.rhs)

    def witness(self) -> dict:
        if self.kind == "series":
            exp, coeff = self.lhs.truncate(self.order).first_difference(self.rhs.truncate(self.order))
            return {"check": self.label, "exponent": str(exp), "difference": str(coeff)}
        if self.kind == "numeric":
            d = self.difference()
            return {"check": self.label, "difference": _arb_str(abs(d)), "tolerance": _arb_str(self.tol)}
        return {"check": self.label, "lhs": _short(self.lhs), "rhs": _short(self.rhs)}

    def perturbed(self) -> "Check":
        """The same check with one coefficient of the right side changed."""
        if self.kind == "series":
            v = self.rhs.valuation()
            e = v if v is not None and v < self.order else Fraction(0)
            bump = QSeries.monomial(e, self.rhs.L, self.rhs.order)
            return Check(self.label, self.lhs, self.rhs + bump, self.kind, self.order, self.tol)
        if self.kind == "numeric":
            return Check(self.label, self.lhs, self.rhs + self.tol * 1000, self.kind, self.order, self.tol)
        if isinstance(self.rhs, bool):
            return Check(self.label, self.lhs, not self.rhs, self.kind)
        return Check(self.label, self.lhs, self.rhs + 1, self.kind, self.order, self.tol)


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def _short(x, limit: int = 160) -> str:
    s = str(x)
    return s if len(s) <= limit else s[:limit] + "..."


def _arb_str(x) -> str:
    return x.str(5, radius=True) if hasattr(x, "str") else str(x)


@dataclass
class Report:
    id: str
    params: dict
    mode: str
    outcome: str
    witness: dict | None = None
    millis: float = 0.0
    checks: list = field(default_factory=list)
    values: dict | None = None

    @property
    def ok(self) -> bool:
        return self.outcome in ("verified", "zero-case")

    def to_json(self, timing: bool = True) -> dict:
        out = {"id": self.id, "params": self.params, "mode": self.mode, "outcome": self.outcome}
        if self.witness is not None:
            out["witness"] = self.witness
        out["checks"] = self.checks
        if self.values:
            out["values"] = self.values
        if timing:
            out["millis"] = round(self.millis, 1)
        return out


@dataclass
class IdentitySpec:
    id: str
    mode: str  # "formal-series", "cyclotomic" or "numeric"
    summary: str
    defaults: dict
    build: object
    sector: object = None


REGISTRY: dict = {}


def register(id: str, mode: str, summary: str, defaults: dict | None = None, sector=None):
    def deco(fn):
        REGISTRY[id] = IdentitySpec(id, mode, summary, dict(defaults or {}), fn, sector)
        return fn
    return deco


def _normalize(params: dict) -> dict:
    out = {}
    for key, val in params.items():
        if val is None:
            continue
        if key in ("k", "omega", "q", "kreal"):
            out[key] = as_fraction(val) if not isinstance(val, Fraction) else val
        elif key in ("N", "m", "n", "s", "sign", "digits"):
            out[key] = int(val)
        elif key == "order":
            out[key] = as_fraction(val)
        else:
            out[key] = val
    return out


def _jsonable(params: dict) -> dict:
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(params.items())}


def verify(id: str, params: dict | None = None, perturb: bool = False) -> Report:
    """Evaluate one registry entry.  Failures are reported as outcomes, never raised."""
    if id not in REGISTRY:
        raise KeyError(f"unknown identity {id!r}")
    spec = REGISTRY[id]
    p = dict(spec.defaults)
    p.update(_normalize(params or {}))
    t0 = time.perf_counter()
    report = Report(id, _jsonable(p), spec.mode, "verified")
    try:
        if spec.sector is not None:
            spec.sector(p)
        result = spec.build(p)
        if not isinstance(result, tuple):
            result = (result,)
        checks, predicted_zero, values = (tuple(result) + (None, None))[:3]
        report.values = values
        if perturb:
            checks = [c.perturbed() for c in checks]
        failed = None
        for c in checks:
            ok = c.holds()
            report.checks.append({"label": c.label, "ok": ok})
            if not ok and failed is None:
                failed = c
        if failed is not None:
            report.outcome, report.witness = "mismatch", failed.witness()
        else:
            all_zero = bool(checks) and all(c.is_zero() for c in checks)
            if all_zero:
                report.outcome = "zero-case"
            if predicted_zero is not None and predicted_zero != all_zero:
                report.outcome = "mismatch"
                report.witness = {"check": "zero-case prediction", "predicted": predicted_zero,
                                  "observed": all_zero}
    except SectorError as exc:
        report.outcome, report.witness = "sector-violation", {"reason": str(exc)}
    except (PoleAtRoot, ZeroDivisionError, PrecisionLoss) as exc:
        report.outcome, report.witness = "degenerate", {"reason": f"{type(exc).__name__}: {exc}"}
    report.millis = (time.perf_counter() - t0) * 1000
    return report


# ---------------------------------------------------------------- series helpers


def _lattice(k) -> int:
    return 4 if as_fraction(k).denominator == 1 else 16


def _one(L, D):
    return QSeries.monomial(0, L, D)


def _mono(e, L, D, c=1):
    return QSeries.monomial(as_fraction(e), L, D, c)


def _binomial(sign: int, e, L, D):
    """1 + sign q^e."""
    return _one(L, D) + _mono(e, L, D, sign)


def _infinite_product(factors, start: int, L: int, D):
    """prod_{j >= start} prod over factors (sign, a, c, power) of (1 + sign q^(a + c j))^power."""
    acc = _one(L, D)
    for sign, a, c, power in factors:
        a, c = as_fraction(a), as_fraction(c)
        j = start
        while a + c * j < D:
            f = _binomial(sign, a + c * j, L, D)
            acc = acc * (f if power > 0 else f.inverse())
            j += 1
    return acc


def _ser(x, L, D):
    return series_expand(x, L, D)


def _qt_valuation(x) -> Fraction | None:
    """Order in q of a rational function of u = q^(1/4)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(0) if x else None
    if x.is_zero():
        return None
    num = min(int(a) for (a, _), _c in x.num.terms())
    den = min(int(a) for (a, _), _c in x.den.terms())
    return Fraction(num - den, 4)


def _lattice_sum(term, lo_start: int, direction: int, D, min_steps: int):
    """sum over j = lo_start, lo_start + direction, ... of the exact scalars term(j).

    Stops after three consecutive terms of valuation >= D once min_steps terms
    are taken; the caller chooses min_steps past the vertex of the valuation
    parabola, beyond which valuations increase.
    """
    terms = []
    j, quiet, steps = lo_start, 0, 0
    while True:
        t = term(j)
        v = _qt_valuation(t)
        if v is None or v >= D:
            quiet += 1
        else:
            quiet = 0
            terms.append(t)
        steps += 1
        if steps >= min_steps and quiet >= 3:
            return terms
        j += direction


def _series_sum(terms, L, D):
    acc = QSeries.zero(L, D)
    for t in terms:
        acc = acc + _ser(t, L, D)
    return acc


def _exponent_sum(exponent, L, D):
    """sum_{j in Z} q^(exponent(j)) for an exponent that grows quadratically in |j|."""
    acc = QSeries.zero(L, D)
    for direction, start in ((1, 0), (-1, -1)):
        j, quiet = start, 0
        while quiet < 3:
            e = exponent(j)
            if e < D:
                acc = acc + _mono(e, L, D)
                quiet = 0
            else:
                quiet += 1
            j += direction
    return acc


def _series_check(label, lhs, rhs, D):
    return Check(label, lhs, rhs, "series", as_fraction(D))


def _work(D):
    return as_fraction(D) + MARGIN


def _pos_k(p, integral_only=False):
    k = p["k"]
    if k <= 0:
        raise SectorError(f"need k > 0, got {k}")
    if integral_only and k.denominator != 1:
        raise SectorError(f"need integral k, got {k}")
    if (2 * k).denominator != 1:
        raise SectorError(f"k={k} must be integral or half-integral")
    return k


def _neg_s(p):
    s = p["s"]
    if s < 0:
        raise SectorError(f"need s >= 0, got {s}")
    return s


# ---------------------------------------------------------------- generic q: constant terms


@lru_cache(maxsize=None)
def _gaussian_inv(L, D):
    return gaussian_series(-1, D, L)


@lru_cache(maxsize=None)
def _ct_weight(k, D, measure):
    """The X-series gamma~^-1 * mu (or * delta) at a specialized k."""
    mode = Mode.at_k(k)
    L = _lattice(k)
    m = mu_series(mode, D, L) if measure == "mu" else delta_series(mode, D, L)
    return _gaussian_inv(L, D) * m


def _ct_against(W, f, L, D):
    """Constant term of W * f for an X-series W and a LaurentPoly f."""
    acc = QSeries.zero(L, D)
    for e, c in f.terms.items():
        w = W.coefficient(-e)
        if w is None or w.is_zero():
            continue
        acc = acc + w * _ser(c, L, D)
    return acc


def _ratio_product(a, b, start, L, D):
    """prod_{j >= start} (1 - q^(j+a)) / (1 - q^(j+b))."""
    return _infinite_product([(-1, a, 1, 1), (-1, b, 1, -1)], start, L, D)


@register("ct-gauss-delta", "formal-series",
          "CT(gamma~^-1 delta) = 2 prod_{j>=0} (1 - q^(j+k)) / (1 - q^(j+2k))",
          {"k": Fraction(1), "order": Fraction(DEFAULT_ORDER)}, lambda p: _pos_k(p))
def _ct_gauss_delta(p):
    k, D = p["k"], p["order"]
    L = _lattice(k)
    lhs = _ct_weight(k, D, "delta").const_term()
    rhs = _ratio_product(k, 2 * k, 0, L, D).scale(2)
    checks = [_series_check("CT(gamma^-1 delta) = 2 prod", lhs, rhs, D)]
    if k == 1:
        checks.append(_series_check("k=1: = 2(1 - q)", lhs, (_one(L, D) - _mono(1, L, D)).scale(2), D))
    return checks


@register("ct-gauss-mu", "formal-series",
          "CT(gamma~^-1 mu) = prod_{j>=1} (1 - q^(j+k)) / (1 - q^(j+2k))",
          {"k": Fraction(1), "order": Fraction(DEFAULT_ORDER)}, lambda p: _pos_k(p))
def _ct_gauss_mu(p):
    k, D = p["k"], p["order"]
    L = _lattice(k)
    lhs = _ct_weight(k, D, "mu").const_term()
    rhs = _ratio_product(k, 2 * k, 1, L, D)
    checks = [_series_check("CT(gamma^-1 mu) = prod", lhs, rhs, D)]
    if k == 1:
        checks.append(_series_check("k=1: = 1 - q^2", lhs, _one(L, D) - _mono(2, L, D), D))
    return checks


# ---------------------------------------------------------------- generic q: Jackson sums


def _jackson_sum_series(k, L, D, F=None):
    """sum_{j>=0} q^((j-k)^2/4) jackson_weight(k, j) as a q-series."""
    F = F or Mode.at_k(k)
    W = _work(D)
    acc = QSeries.zero(L, W)
    j, quiet = 0, 0
    while quiet < 3 or j <= abs(k) + 2:
        e = (j - k) ** 2 / 4
        w = jackson_weight(F, k, j)
        v = _qt_valuation(w)
        if v is not None and e + v < W:
            acc = acc + _ser(w, L, W - e).shift(e)
            quiet = 0
        else:
            quiet += 1
        j += 1
    return acc


def _theta_product(k, L, D):
    """q^(k^2/4) prod_{j>=1} (1-q^(j/2))(1-q^(j+k))(1+q^(j/2-1/4+k/2))(1+q^(j/2-1/4-k/2)) / (1-q^j)."""
    W = _work(D)
    prod = _infinite_product([(-1, 0, HALF, 1), (-1, k, 1, 1), (1, -Fraction(1, 4) + k / 2, HALF, 1),
                              (1, -Fraction(1, 4) - k / 2, HALF, 1), (-1, 0, 1, -1)], 1, L, W)
    return prod.shift(k * k / 4)


@register("jackson-gauss", "formal-series",
          "sum_j q^((k-j)^2/4) w_j = prod (1-q^(j+k))/(1-q^j) sum_Z q^((k+j)^2/4) = theta product",
          {"k": Fraction(1), "order": Fraction(DEFAULT_ORDER)}, lambda p: _pos_k(p))
def _jackson_gauss(p):
    k, D = p["k"], p["order"]
    L = _lattice(k)
    W = _work(D)
    lhs = _jackson_sum_series(k, L, D)
    middle = _ratio_product(k, 0, 1, L, W) * _exponent_sum(lambda j: (k + j) ** 2 / 4, L, W)
    right = _theta_product(k, L, D)
    return [_series_check("sum = prod * theta series", lhs, middle, D),
            _series_check("sum = theta product", lhs, right, D)]


@register("jackson-gauss-even", "formal-series",
          "q^(k^2/4) sum_j q^(j^2-jk) w''_j = q^(k^2/4) prod (1-q^(j+k))/(1-q^j) sum_Z q^(j^2-jk)",
          {"k": Fraction(1), "order": Fraction(DEFAULT_ORDER)}, lambda p: _pos_k(p))
def _jackson_gauss_even(p):
    k, D = p["k"], p["order"]
    L = _lattice(k)
    W = _work(D)
    F = Mode.at_k(k)
    # the common factor q^(k^2/4) is cancelled on both sides
    acc = QSeries.zero(L, W)
    j, quiet = 0, 0
    while quiet < 3 or j <= abs(k) + 2:
        e = j * j - j * k
        w = even_weight(F, k, j)
        v = _qt_valuation(w)
        if v is not None and e + v < W:
            acc = acc + _ser(w, L, W - e).shift(e)
            quiet = 0
        else:
            quiet += 1
        j += 1
    rhs = _ratio_product(k, 0, 1, L, W) * _exponent_sum(lambda j: j * j - j * k, L, W)
    return [_series_check("even sum = prod * theta series", acc, rhs, D)]


def _half_k(p):
    s = _neg_s(p)
    sign = p.get("sign", 1)
    if sign not in (1, -1):
        raise SectorError("sign must be +1 or -1")
    return (HALF + s) if sign == 1 else (-HALF - s)


@register("jackson-gauss-half", "formal-series",
          "k = +-(1/2 + s): sum_j q^((j-k)^2/4) w_j = 2 q^(1/16) prod (1-q^(j+k))/(1-q^(j-1/2)) = finite product",
          {"s": 0, "sign": 1, "order": Fraction(DEFAULT_ORDER)})
def _jackson_gauss_half(p):
    k, D = _half_k(p), p["order"]
    s = p["s"]
    L = 16
    W = _work(D)
    F = Mode.at_k(k)
    lhs = _jackson_sum_series(k, L, D, F)
    if k < 0:
        # every later term carries the factor 1 - q^0
        lhs_tail_zero = all(jackson_weight(F, k, j).is_zero() for j in range(2 * s + 2, 2 * s + 6))
    pre = _mono(Fraction(1, 16), L, W, 2)
    infinite = pre * _infinite_product([(-1, k, 1, 1), (-1, -HALF, 1, -1)], 1, L, W)
    # the full sum is twice C'_k for negative k
    prod = halfint_product(F, k) if k > 0 else 2 * halfint_product(F, k)
    finite = _ser(prod, L, W).shift(Fraction(1, 16))
    checks = [_series_check("sum = 2 q^(1/16) infinite product", lhs, infinite, D),
              _series_check("sum = 2 q^(1/16) finite product", lhs, finite, D)]
    if k < 0:
        checks.append(Check("sum terminates at j = 2s + 1", lhs_tail_zero, True))
    return checks


@register("jackson-gauss-half-even", "formal-series",
          "k = +-(1/2 + s): sum_j q^(j^2-kj) w''_j = infinite product = finite product",
          {"s": 0, "sign": 1, "order": Fraction(DEFAULT_ORDER)})
def _jackson_gauss_half_even(p):
    k, D = _half_k(p), p["order"]
    s = p["s"]
    L = 4
    W = _work(D)
    F = Mode.at_k(k)
    if k > 0:
        acc = QSeries.zero(L, W)
        j, quiet = 0, 0
        while quiet < 3 or j <= k + 2:
            e = j * j - k * j
            w = even_weight(F, k, j)
            v = _qt_valuation(w)
            if v is not None and e + v < W:
                acc = acc + _ser(w, L, W - e).shift(e)
                quiet = 0
            else:
                quiet += 1
            j += 1
        lhs = acc
    else:
        lhs = _ser(even_partial_sum(F, k, s), L, W)
    infinite = _infinite_product([(1, -k - 1, 2, 1), (1, k, 2, -1), (-1, 2 * k, 2, 1), (-1, -1, 2, -1)], 1, L, W)
    finite = _ser(c_double_prime(F, k), L, W)
    checks = [_series_check("sum = infinite product", lhs, infinite, D),
              _series_check("sum = finite product", lhs, finite, D)]
    if k < 0:
        checks.append(Check("sum terminates at j = s", all(even_weight(F, k, j).is_zero()
                                                             for j in range(s + 1, s + 4)), True))
    return checks


# ---------------------------------------------------------------- generic q: main theorem


def _main_generic_sector(p):
    k = _pos_k(p, integral_only=True)
    if abs(p["m"]) > 4 or abs(p["n"]) > 4:
        raise SectorError("|m|, |n| <= 4 keeps the series controlled")
    if p.get("side", "both") not in ("circ", "bullet", "both"):
        raise SectorError("side must be circ, bullet or both")
    if p.get("family", "p") not in ("p", "eps"):
        raise SectorError("family must be p or eps")
    if p.get("family", "p") == "p" and (p["m"] < 0 or p["n"] < 0):
        raise SectorError("Rogers polynomials need m, n >= 0")
    return k


@lru_cache(maxsize=None)
def _bullet_gaussian(k, D):
    """<q^(x^2)>_bullet through the theta product, to order D."""
    return _theta_product(k, _lattice(k), D - MARGIN)


@lru_cache(maxsize=None)
def _circ_gaussian(k, D):
    """<q^(-x^2)>_circ = prod_{j>=1} (1 - q^(j+k)) / (1 - q^(j+2k)), to order D."""
    return _ratio_product(k, 2 * k, 1, _lattice(k), D)


def _extra(W, head):
    """Order needed for a factor multiplied by `head` so the product is good to W."""
    v = head.valuation()
    return W - min(v, 0) if v is not None else W


def _poly(family, n, mode):
    return rogers_p(n, mode) if family == "p" else spherical_epsilon(n, mode)


@register("main-generic", "formal-series",
          "<f_m f_n q^(-+x^2)> = q^(+-E/4) f_m(point) f_n(k/2) <q^(-+x^2)> for Rogers (p) or spherical (eps) f; eps_n^* on the bullet side",
          {"k": Fraction(1), "m": 1, "n": 0, "side": "both", "family": "p", "order": Fraction(30)},
          _main_generic_sector)
def _main_generic(p):
    k, m, n, D = p["k"], p["m"], p["n"], p["order"]
    family, side = p.get("family", "p"), p.get("side", "both")
    mode = Mode.at_k(k)
    L = _lattice(k)
    W = _work(D)
    fm, fn = _poly(family, m, mode), _poly(family, n, mode)
    if family == "p":
        E = m * m + n * n + 2 * k * (m + n)
        value = evaluate(fm, (n + k) / 2) * evaluate(fn, k / 2)
    else:
        E = m * m + n * n + 2 * k * (abs(m) + abs(n))
        value = evaluate(fn, sharp_value(m, k))
    checks = []
    if side in ("circ", "both"):
        Wt = _ct_weight(k, W, "mu")
        lhs = _ct_against(Wt, fm * fn, L, W)
        head = _ser(value, L, W - E / 4).shift(E / 4)
        rhs = head * _circ_gaussian(k, _extra(W, head))
        checks.append(_series_check("circ: CT(f_m f_n gamma^-1 mu)", lhs, rhs, D))
    if side in ("bullet", "both"):
        f = fm * fn
        spread = 2 * (abs(m) + abs(n)) + int(k) + 4
        if family == "p":
            # sum_{j>=0} q^(-kj) w_j f((k+j)/2) q^(((k+j)/2)^2)
            def term(j):
                z = (k + j) / 2
                return mode.q_pow(-k * j + z * z) * jackson_weight(mode, k, j) * evaluate(f, z)
            terms = _lattice_sum(term, 0, 1, W, spread)
        else:
            # sum over n in Z of mu_bullet(n#) eps_m(n#) eps_n^*(n#) q^((n#)^2), star taken formally
            def term(j):
                z = sharp_value(j, k)
                return mode.q_pow(z * z) * mu_bullet(j, mode) * evaluate(fm, z) * conj(evaluate(fn, z))
            terms = _lattice_sum(term, 1, 1, W, spread) + _lattice_sum(term, 0, -1, W, spread)
        lhs = _series_sum(terms, L, W)
        head = _ser(value, L, W + E / 4).shift(-E / 4)
        rhs = head * _bullet_gaussian(k, _extra(W, head))
        checks.append(_series_check("bullet: sum of f_m f_n gamma", lhs, rhs, D))
    return checks


@register("eta-like", "formal-series",
          "q^(1/16 - k^2/4) prod_{j=1}^s (1 - q^(1/2-j)) = prod_{j=1}^s (1 - q^(2k+2j)) / (1 + q^(k+2j)), k = -1/2 - s",
          {"s": 1, "order": Fraction(DEFAULT_ORDER)})
def _eta_like(p):
    s, D = _neg_s(p), p["order"]
    k = -HALF - s
    F = _field(p, k)
    lhs = F.q_pow(Fraction(1, 16) - k * k / 4)
    rhs = F.one()
    for j in range(1, s + 1):
        lhs = lhs * (F.one() - F.q_pow(HALF - j))
        rhs = rhs * (F.one() - F.q_pow(2 * k + 2 * j)) / (F.one() + F.q_pow(k + 2 * j))
    checks = [Check("exact", lhs, rhs)]
    if "N" not in p:
        checks.append(_series_check("as series", _ser(lhs, 4, D), _ser(rhs, 4, D), D))
    return checks


def _field(p, k):
    """Mode.at_k(k) for generic q, or a root context when N is given."""
    if "N" in p:
        return RootContext(p["N"], p.get("sign", -1))
    return Mode.at_k(k)


def _neg_root_sector(p):
    s = _neg_s(p)
    if "N" in p and not 2 * s + 1 < p["N"]:
        raise SectorError(f"k = -1/2 - {s} needs 2s + 1 < N")


@register("negative-even-reduction", "formal-series",
          "sum_{j=0}^s q^(j^2-kj) w''_j = prod_{j=1}^s (1 - q^(2k+2j)) / (1 + q^(k+2j)), k = -1/2 - s",
          {"s": 1, "order": Fraction(DEFAULT_ORDER)}, _neg_root_sector)
def _negative_even_reduction(p):
    s = p["s"]
    k = -HALF - s
    F = _field(p, k)
    lhs = even_partial_sum(F, k, s)
    return [Check("reduction sum = product", lhs, c_double_prime(F, k))]


@register("negative-bar-sum", "formal-series",
          "sum_{j=s+1}^{2s+1} q^((j^2-2kj)/4) w_(j-1)... = q^(1/16-k^2/4) prod (1 - q^(1/2-j)), k = -1/2 - s",
          {"s": 1}, _neg_root_sector)
def _negative_bar_sum(p):
    s = p["s"]
    k = -HALF - s
    F = _field(p, k)
    lhs = _bar_sum(F, k, s)
    rhs = F.q_pow(Fraction(1, 16) - k * k / 4)
    for j in range(1, s + 1):
        rhs = rhs * (F.one() - F.q_pow(HALF - j))
    return [Check("C-part sum = product", lhs, rhs)]


def _bar_sum(F, k, s):
    """sum_{j=s+1}^{2s+1} q^((j^2 - 2kj)/4) (1 - q^(j+k)) / (1 - q^k) prod_{l=1}^j (1 - q^(l+2k-1)) / (1 - q^l)."""
    total = F.zero()
    for j in range(s + 1, 2 * s + 2):
        total = total + F.q_pow(Fraction(j * j, 4) - k * j / 2) * jackson_weight(F, k, j)
    return total


@register("negative-coincidence", "formal-series",
          "the C-part sum and the rearranged reduction sum agree, k = -1/2 - s",
          {"s": 1}, _neg_root_sector)
def _negative_coincidence(p):
    s = p["s"]
    k = -HALF - s
    F = _field(p, k)
    return [Check("C-part sum = reduction sum", _bar_sum(F, k, s), even_partial_sum(F, k, s))]


@register("rearranged", "formal-series",
          "explicit weights on the rearranged set give q^(-E/4) eps_n(m#) prod (1 - q^(2k+2j)) / (1 + q^(k+2j))",
          {"s": 1}, _neg_root_sector)
def _rearranged(p):
    s = p["s"]
    k = -HALF - s
    if "N" in p:
        R = RootContext(p["N"], p.get("sign", -1))
        mode = Mode.at_root(R, k)
    else:
        mode = Mode.at_k(k)
    F = mode
    one = F.one()

    def w_prod(n):
        w = one
        for l in range(1, n + 1):
            w = w * (one - F.q_pow(l + 2 * k)) / (one - F.q_pow(l))
        return w

    # (weight, point): points (2j + k)/2 for j = 1..s and -(2j + k)/2 for j = 0..s
    nodes = [(F.q_pow(-(2 * j - 1) * k + j * j + k * j) * w_prod(2 * j - 1), (2 * j + k) / 2) for j in range(1, s + 1)]
    nodes += [(F.q_pow(-2 * j * k + j * j + k * j) * w_prod(2 * j), -(2 * j + k) / 2) for j in range(s + 1)]
    labels = [2 * j for j in range(1, s + 1)] + [-2 * j for j in range(s + 1)]
    const = c_double_prime(F, k)
    eps = {n: spherical_epsilon(n, mode) for n in labels}
    checks = []
    for m in labels:
        for n in labels:
            lhs = F.zero()
            for w, z in nodes:
                lhs = lhs + w * evaluate(eps[m], z) * conj(evaluate(eps[n], z))
            E = m * m + n * n + 2 * k * (abs(m) + abs(n))
            rhs = F.q_pow(-E / 4) * evaluate(eps[n], sharp_value(m, k)) * const
            checks.append(Check(f"m={m}, n={n}", lhs, rhs))
    return checks


# ---------------------------------------------------------------- roots of unity: classical sums


def _root(p, default_sign=1):
    return RootContext(p["N"], p.get("sign", default_sign))


def _n_positive(p):
    if p["N"] < 1:
        raise SectorError("N >= 1")


@register("gauss-classical", "cyclotomic",
          "S = sum_{m=0}^{2N-1} q^(m^2/4): S^2 = 2iN and S = (1+i) sqrt(N) numerically",
          {"N": 4, "digits": DEFAULT_DIGITS}, _n_positive)
def _gauss_classical(p):
    N, digits = p["N"], p["digits"]
    R = RootContext(N, 1)
    S = classical_sum(R)
    i = R.imag_unit()
    checks = [Check("S^2 = 2iN", S * S, i * (2 * N))]
    old = ctx.prec
    ctx.prec = int(digits * 3.33) + 60
    try:
        val = numeric_embed(S, digits)
        target = acb(1, 1) * arb(N).sqrt()
        tol = arb(10) ** (-(digits - 10))
        checks.append(Check("S = (1+i) sqrt(N)", val, target, "numeric", tol=tol))
    finally:
        ctx.prec = old
    values = {"S": f"(1+i)*({_gaussian_form(S / (R.one() + i), R)})", "S^2": _gaussian_form(S * S, R),
              "S numeric": val.str(min(digits, 20), radius=False)}
    return checks, None, values


def _gaussian_form(x, R) -> str:
    """x as r or r*i when it is a rational multiple of 1 or i, else its cyclotomic form."""
    if x.is_rational():
        return str(x.to_fraction())
    y = x / R.imag_unit()
    if y.is_rational():
        r = y.to_fraction()
        return "i" if r == 1 else "-i" if r == -1 else f"{r}i"
    return str(x)


@register("gauss-product", "cyclotomic",
          "N = 2k: sum_{m=0}^{2N-1} q^(m^2/4) = q^(k^2/4) prod_{j=1}^k (1 - q^j) = (1+i) sqrt(N)",
          {"N": 4})
def _gauss_product(p):
    N = p["N"]
    if N % 2:
        raise SectorError("the product form needs even N")
    k = N // 2
    R = RootContext(N, 1)
    S = classical_sum(R)
    return [Check("S = q^(k^2/4) prod (1 - q^j)", S, R.q_pow(Fraction(k * k, 4)) * q_factorial(R, k)),
            Check("S^2 = 2iN", S * S, R.imag_unit() * (2 * N))]


def _selberg_sector(p):
    N, k = p["N"], p["k"]
    if k.denominator != 1 or not 1 <= k <= (N - 1) // 2:
        raise SectorError(f"need integral 1 <= k <= (N-1)/2, got k={k}, N={N}")


@register("gauss-selberg", "cyclotomic",
          "sum_{j=0}^{N-2k} q^((k-j)^2/4) w_j = prod_{j=1}^k (1 - q^j)^-1 sum_{m=0}^{2N-1} q^(m^2/4)",
          {"N": 5, "k": Fraction(1)}, _selberg_sector)
def _gauss_selberg(p):
    N, k = p["N"], p["k"]
    R = RootContext(N, 1)
    lhs = jackson_partial_sum(R, k, 0, N - 2 * int(k))
    return [Check("finite Jackson sum = S / (q; q)_k", lhs, classical_sum(R) / q_factorial(R, int(k)))]


def _prime_sector(p):
    N, k = p["N"], p["k"]
    if k > 0 and not 2 * k < N:
        raise SectorError(f"need 0 < k < N/2, got k={k}, N={N}")
    if k < 0 and not (k.denominator == 2 and -Fraction(N, 2) < k):
        raise SectorError(f"negative k={k} must be half-integral with -N/2 < k")
    if k == 0:
        raise SectorError("k = 0")
    if (2 * k).denominator != 1:
        raise SectorError(f"k={k} must be integral or half-integral")


def _prime_sign(p):
    return p.get("sign") or conventional_sign(p["N"], p["k"], "prime")


@register("gauss-constant-prime", "cyclotomic",
          "<gamma>' over the full spectral set equals the closed form C'_k",
          {"N": 5, "k": Fraction(1)}, _prime_sector)
def _gauss_constant_prime(p):
    N, k = p["N"], p["k"]
    sign = _prime_sign(p)
    mod = build_module(N, k, "prime", sign)
    R = mod.root
    lhs = mod.integral(mod.gaussian_vector(1))
    predicted = k.denominator == 1 and sign == -1 and N % 4 == 1
    return [Check("<gamma>' = C'_k", lhs, c_prime(R, k, N))], predicted


def _gen_sector(p):
    N, k = p["N"], p["k"]
    if k.denominator != 1 or not 1 <= k <= N // 2:
        raise SectorError(f"need integral 1 <= k <= [N/2], got k={k}, N={N}")


def _gen_zero(N, k):
    return N % 2 == 0 and (N // 2 - k) % 2 == 1


@register("gen-gauss", "cyclotomic",
          "sum_{j=0}^{M-k} q^(j^2-jk) w''_j = prod_{j=1}^k (1 - q^j)^-1 sum_{j=0}^{N-1} q^(j^2-jk)",
          {"N": 6, "k": Fraction(1)}, _gen_sector)
def _gen_gauss(p):
    N, k = p["N"], int(p["k"])
    R = _root(p)
    lhs = even_partial_sum(R, k, N // 2 - k)
    G = R.zero()
    for j in range(N):
        G = G + R.q_pow(j * j - j * k)
    return [Check("even sum = G / (q; q)_k", lhs, G / q_factorial(R, k))], _gen_zero(N, k)


@register("gen-gauss-simplified", "cyclotomic",
          "sum_{j=0}^{M-k} q^(j^2-jk) w''_j = q^((L-K)(L+K)) prod_{j=k+1}^M (1 - q^j)  (N odd or M - k even)",
          {"N": 7, "k": Fraction(1)}, _gen_sector)
def _gen_gauss_simplified(p):
    N, k = p["N"], int(p["k"])
    M = N // 2
    if N % 2 == 0 and (M - k) % 2:
        raise SectorError("the simplified form assumes N odd or M - k even")
    R = _root(p)
    lhs = even_partial_sum(R, k, M - k)
    rhs = R.q_pow(lk_exponent(N, k))
    for j in range(k + 1, M + 1):
        rhs = rhs * (R.one() - R.q_pow(j))
    return [Check("even sum = simplified product", lhs, rhs)]


@register("gen-gauss-trivial", "cyclotomic",
          "N odd: sum_{j<N} q^(j^2) = q^(L^2) prod_{j=1}^M (1 - q^j); N = 2M: sum_{j<M} (-1)^j q^(j^2) = prod_{j<M} (1 - q^j)",
          {"N": 6}, _n_positive)
def _gen_gauss_trivial(p):
    N = p["N"]
    if N < 2:
        raise SectorError("N >= 2")
    M = N // 2
    R = _root(p)
    if N % 2:
        lhs = R.zero()
        for j in range(N):
            lhs = lhs + R.q_pow(j * j)
        rhs = R.q_pow(l_square_exponent(N)) * q_factorial(R, M)
        return [Check("sum q^(j^2) = q^(L^2) (q; q)_M", lhs, rhs)]
    lhs = R.zero()
    for j in range(M):
        lhs = lhs + R.q_pow(j * j) * (-1) ** j
    return [Check("alternating sum = (q; q)_(M-1)", lhs, q_factorial(R, M - 1))]


@register("l-square-sanity", "cyclotomic",
          "N = 2M + 1: q^(L^2) = i^(-M^2 N) q^(M^2/4) with L = M/2 mod N",
          {"N": 5}, _n_positive)
def _l_square(p):
    N = p["N"]
    if N % 2 == 0:
        raise SectorError("needs odd N")
    M = N // 2
    R = RootContext(N, 1)
    return [Check("q^(L^2) = i^(-M^2 N) q^(M^2/4)", R.q_pow(l_square_exponent(N)),
                  imag_power(R, -M * M * N) * R.q_pow(Fraction(M * M, 4)))]


# ---------------------------------------------------------------- roots of unity: pairing formulas


def _pairing_checks(mod, labels, constant, side, normalized=False):
    """Both Gaussian-pairing formulas on a finite module.

    bullet: <eps_m eps_n^* gamma> = q^(-E/4) eps_n(m#) C(m, n)
    circ:   <eps_m eps_n gamma^-1> = q^(E/4) eps_n(m#) C(m, n)^*
    """
    R, mode, k = mod.root, mod.mode, mod.k
    eps = {n: mod.epsilon_vector(n) for n in labels}
    polys = {n: spherical_epsilon(n, mode) for n in labels}
    g = mod.gaussian_vector(1, normalized)
    gi = mod.gaussian_vector(-1, normalized)
    checks = []
    for m in labels:
        for n in labels:
            E = m * m + n * n + 2 * k * (abs(m) + abs(n))
            val = evaluate(polys[n], sharp_value(m, k))
            C = constant(m, n)
            if side in ("bullet", "both"):
                lhs = mod.integral([a * conj(b) * c for a, b, c in zip(eps[m], eps[n], g)])
                checks.append(Check(f"bullet m={m}, n={n}", lhs, R.q_pow(-E / 4) * val * C))
            if side in ("circ", "both"):
                lhs = mod.integral([a * b * c for a, b, c in zip(eps[m], eps[n], gi)])
                checks.append(Check(f"circ m={m}, n={n}", lhs, R.q_pow(E / 4) * val * conj(C)))
    return checks


@register("main-root-prime", "cyclotomic",
          "<eps_m eps_n^* gamma>' = q^(-E/4) eps_n(m#) C'_k and <eps_m eps_n gamma^-1>' = q^(E/4) eps_n(m#) C'_k^*",
          {"N": 5, "k": Fraction(1), "side": "both"}, _prime_sector)
def _main_root_prime(p):
    N, k = p["N"], p["k"]
    sign = _prime_sign(p)
    mod = build_module(N, k, "prime", sign)
    C = c_prime(mod.root, k, N)
    predicted = k.denominator == 1 and sign == -1 and N % 4 == 1
    return _pairing_checks(mod, mod.labels, lambda m, n: C, p.get("side", "both")), predicted


def _even_sector(p):
    N, k = p["N"], p["k"]
    if k.denominator != 1 or not 0 < 2 * k < N:
        raise SectorError(f"need integral 0 < k < N/2, got k={k}, N={N}")


def _even_root_checks(p, printed):
    N, k = p["N"], int(p["k"])
    mod = build_module(N, k, "even", 1)
    R = mod.root
    base = c_double_prime(R, k, N)
    pair = printed_even_pairing_constant if printed else even_pairing_constant
    labels = list(range(1, N - 2 * k + 1))
    return _pairing_checks(mod, labels, lambda m, n: pair(R, k, m, n) * base, p.get("side", "both"))


@register("main-root-even", "cyclotomic",
          "even module, integral k: pairing formulas with C(m, n) C''_k, C = i^(N(k+m+n)^2) for odd N",
          {"N": 5, "k": Fraction(1), "side": "both"}, _even_sector)
def _main_root_even(p):
    return _even_root_checks(p, printed=False)


@register("main-root-even-printed", "cyclotomic",
          "as main-root-even with the alternative constant i^(N(m^2+n^2+2k(|m|+|n|))); expected to fail for odd N",
          {"N": 3, "k": Fraction(1), "side": "bullet"}, _even_sector)
def _main_root_even_printed(p):
    return _even_root_checks(p, printed=True)


def _halfint_sector(p):
    N, k = p["N"], p["k"]
    if k.denominator != 2 or not 0 < 2 * k < N:
        raise SectorError(f"need half-integral 0 < k < N/2, got k={k}, N={N}")


def _halfint_checks(p, printed):
    N, k = p["N"], p["k"]
    mod = build_module(N, k, "even", 1)
    R = mod.root
    base = c_double_prime(R, k)
    if printed:
        const = lambda m, n: printed_halfint_prefactor(R, k, m, n) * base
    else:
        pre = halfint_prefactor(R, k)
        const = lambda m, n: pre * base
    return _pairing_checks(mod, mod.labels, const, p.get("side", "both"), normalized=True)


@register("main-root-halfint-even", "cyclotomic",
          "even module, half-integral k, q^(z^2 - k^2/4): pairing formulas with (1 + i^(2k-N)) C''_k",
          {"N": 5, "k": HALF, "side": "both"}, _halfint_sector)
def _main_root_halfint_even(p):
    return _halfint_checks(p, printed=False), (int(2 * p["k"]) - p["N"]) % 4 == 2


@register("main-root-halfint-even-printed", "cyclotomic",
          "as main-root-halfint-even with the label-dependent prefactor 1 + i^(2k+|m|+|n|-N)",
          {"N": 5, "k": HALF, "side": "bullet"}, _halfint_sector)
def _main_root_halfint_even_printed(p):
    return _halfint_checks(p, printed=True)


@register("halfint-reduction", "cyclotomic",
          "half-integral k: sum_{j=0}^{[N/2-k]} q^(j^2-kj) w''_j = (1 + i^(2k-N)) C''_k",
          {"N": 5, "k": HALF}, _halfint_sector)
def _halfint_reduction(p):
    N, k = p["N"], p["k"]
    R = RootContext(N, 1)
    lhs = even_partial_sum(R, k, int(Fraction(N, 2) - k))
    predicted = (int(2 * k) - N) % 4 == 2
    return [Check("reduction sum = (1 + i^(2k-N)) C''_k", lhs, halfint_prefactor(R, k) * c_double_prime(R, k))], predicted


@register("gauss-constant-halfint", "cyclotomic",
          "half-integral k: sum_{j=0}^{N-2k} q^((j-k)^2/4) w_j = 2 q^(1/16) prod_{j=0}^{k-1/2} (1 - q^(1/2+j))^-1",
          {"N": 5, "k": HALF}, _halfint_sector)
def _gauss_constant_halfint(p):
    N, k = p["N"], p["k"]
    R = RootContext(N, 1)
    lhs = jackson_partial_sum(R, k, 0, int(N - 2 * k))
    mod = build_module(N, k, "prime", 1)
    return [Check("finite sum = C'_k", lhs, c_prime(R, k)),
            Check("<gamma>' = C'_k", mod.integral(mod.gaussian_vector(1)), c_prime(R, k))]


def _neg_prime_sector(p):
    s = _neg_s(p)
    if not 2 * s + 1 < p["N"]:
        raise SectorError(f"k = -1/2 - {s} needs 2s + 1 < N")


@register("negative-prime", "cyclotomic",
          "k = -1/2 - s: <gamma>' = sum_{j=s+1}^{2s+1} ... = q^(1/16) prod (1 - q^(1/2-j)) and the pairing formulas",
          {"N": 5, "s": 1, "side": "both"}, _neg_prime_sector)
def _negative_prime(p):
    N, s = p["N"], p["s"]
    k = -HALF - s
    sign = p.get("sign", -1)
    mod = build_module(N, k, "prime", sign)
    R = mod.root
    C = c_prime(R, k)
    checks = [Check("finite sum = C'", jackson_partial_sum(R, k, s + 1, 2 * s + 1), C),
              Check("<gamma>' = C'", mod.integral(mod.gaussian_vector(1)), C)]
    return checks + _pairing_checks(mod, mod.labels, lambda m, n: C, p.get("side", "both"))


@register("shifted-product", "cyclotomic",
          "N = 2M + 1, q^(1/2) = -exp(pi i/N): prod_{j=1}^s (1 - q^(1-2j)) / (1 + q^(M-s+2j)) = q^(-s(s+1)/4) prod_{j<s} (1 - q^(M-j))",
          {"N": 7, "s": 1}, _neg_prime_sector)
def _shifted_product(p):
    N, s = p["N"], p["s"]
    if N % 2 == 0:
        raise SectorError("needs odd N")
    M = N // 2
    R = RootContext(N, -1)
    lhs = R.one()
    for j in range(1, s + 1):
        lhs = lhs * (R.one() - R.q_pow(1 - 2 * j)) / (R.one() + R.q_pow(M - s + 2 * j))
    rhs = R.q_pow(Fraction(-s * (s + 1), 4))
    for j in range(s):
        rhs = rhs * (R.one() - R.q_pow(M - j))
    return [Check("product identity", lhs, rhs),
            Check("q^M = q^(-1/2)", R.q_pow(M), R.q_pow(-HALF))]


@register("khat-correspondence", "cyclotomic",
          "N = 2M + 1: the even modules at k = M - s and k = -1/2 - s are isomorphic",
          {"N": 7, "s": 1})
def _khat(p):
    N, s = p["N"], p["s"]
    if N % 2 == 0 or not 0 <= s < N // 2:
        raise SectorError("needs odd N and 0 <= s < M")
    rep = correspondence_isomorphic(N, s)
    return [Check("t^(1/2) agrees up to sign", rep["t_half_match"], True),
            Check("same X^2 spectrum", rep.get("same_x2_spectrum", False), True),
            Check("intertwiner exists", rep["isomorphic"], True)]


@register("fourier", "cyclotomic",
          "Fourier transforms of a finite module: inversion, delta images, Plancherel, sigma conjugation",
          {"N": 8, "k": Fraction(1), "variant": "prime"})
def _fourier(p):
    N, k = p["N"], p["k"]
    mod = build_module(N, k, p.get("variant", "prime"), p.get("sign"))
    return [Check(label, ok, True) for label, ok in mod.fourier_checks().items()]


# ---------------------------------------------------------------- deformed Verlinde algebra


@register("verlinde", "cyclotomic",
          "deformed little Verlinde algebra at k = -1/2 - s (generic q, or q^(1/2) = -exp(pi i/N))",
          {"s": 1})
def _verlinde(p):
    from .verlinde import VerlindeAlgebra

    s = p["s"]
    if s < 1:
        raise SectorError("s >= 1")
    N = p.get("N")
    if N is not None and not 2 * s + 1 < N:
        raise SectorError(f"needs 2s + 1 < N")
    alg = VerlindeAlgebra(s, N)
    checks = [Check("symmetric functions form the T = t^(1/2) eigenspace", alg.is_t_plus(), True)]
    if s == 1:
        checks += [Check(label, ok, True) for label, ok in alg.check_s1().items()]
    else:
        checks.append(Check("form agrees with the module form", alg.form_agrees_with_module(), True))
        Nc = alg.structure_constants()
        one = alg.mode.one()
        checks.append(Check("p'_0 is the unit", all(Nc[0][b] == [one if c == b else alg.mode.zero()
                                                              for c in range(alg.dim)] for b in range(alg.dim)), True))
    return checks


@register("verlinde-positivity", "numeric",
          "the deformed Verlinde form is positive at q^(1/2) = -exp(pi i omega)",
          {"s": 1, "omega": Fraction(1, 4), "digits": 30})
def _verlinde_positivity(p):
    from .verlinde import VerlindeAlgebra

    s, omega = p["s"], p["omega"]
    if s < 1 or not 0 < omega < 1:
        raise SectorError("needs s >= 1 and 0 < omega < 1")
    alg = VerlindeAlgebra(s)
    return [Check(f"weights positive at omega={omega}", alg.is_positive(omega, p["digits"]), True)]


# ---------------------------------------------------------------- numeric psi recursions


def _arb_of(x: Fraction):
    return arb(x.numerator) / x.denominator


def psi_sharp(k: Fraction, q: Fraction, digits: int = DEFAULT_DIGITS):
    """The sharp q-Mellin transform of the Gaussian as an arb ball.

    psi_k = -(a pi / 2) prod_{j>=0} (1 - q^(j-k)) / (1 - q^(j+1)) <gamma>,  q = exp(-1/a),
    with both truncation tails folded into the radius.
    """
    kk, qq = _arb_of(k), _arb_of(q)
    eps = arb(10) ** (-(digits + 10))
    a = -1 / qq.log()
    # product: stop once the tail bound is below eps
    prod = arb(1)
    j = 0
    while True:
        x = qq ** (j - kk)
        if j > k + 1 and x < arb(1) / 2:
            tail = 2 * x / ((1 - qq) * (1 - x))
            if tail < eps:
                prod = prod * arb(0, tail.upper()).exp()
                break
        prod = prod * (1 - qq ** (j - kk)) / (1 - qq ** (j + 1))
        j += 1
    # sum: |w_j| <= P = prod (1 + q^(l+2k-1)) / (1 - q^l) <= exp(q^(2k)/(1-q) + q/(1-q)^2)
    P = (qq ** (2 * kk) / (1 - qq) + qq / (1 - qq) ** 2).exp()
    total = arb(0)
    w = arb(1)
    j = 0
    while True:
        if j > 0:
            w = w * (1 - qq ** (j + 2 * kk - 1)) / (1 - qq ** j)
        total = total + qq ** ((kk - j) ** 2 / 4) * (1 - qq ** (j + kk)) / (1 - qq ** kk) * w
        j += 1
        m0 = j - kk
        if j > k + 1:
            tail = 2 * P / abs(1 - qq ** kk) * qq ** (m0 * m0 / 4) / (1 - qq ** (m0 / 2))
            if tail < eps:
                total = total + arb(0, tail.upper())
                break
    return -a * arb.pi() / 2 * prod * total


def psi_imaginary(k: Fraction, q: Fraction, digits: int = DEFAULT_DIGITS):
    """pi_k^-1 times the imaginary Gaussian integral; the closed form collapses to sqrt(a pi)."""
    kk, qq = _arb_of(k), _arb_of(q)
    a = -1 / qq.log()
    num = arb(1)
    j = 0
    eps = arb(10) ** (-(digits + 10))
    while True:
        x = qq ** (j + kk)
        if x < eps * (1 - qq) / 4:
            break
        num = num * (1 - qq ** (j + kk)) / (1 - qq ** (j + 2 * kk))
        j += 1
    pi_k = num
    integral = (a * arb.pi()).sqrt() * num
    return integral / pi_k


def _psi_sector(p):
    k, q = p["kreal"], p["q"]
    if k.denominator == 1 or k <= 0:
        raise SectorError("the sharp closed form needs positive non-integral k")
    if not 0 < q < 1:
        raise SectorError("needs 0 < q < 1")


@register("psi-sharp", "numeric",
          "sharp Gaussian: phi_k + phi_(k+1) = 0 and psi_k = (1 - q^(k+1)) psi_(k+1) + q^(k+2) psi_(k+2)",
          {"kreal": Fraction(3, 10), "q": Fraction(1, 2), "digits": DEFAULT_DIGITS}, _psi_sector)
def _psi_sharp(p):
    k, q, digits = p["kreal"], p["q"], p["digits"]
    old = ctx.prec
    ctx.prec = int(digits * 3.33) + 60
    try:
        kk, qq = _arb_of(k), _arb_of(q)
        p0, p1, p2 = (psi_sharp(k + i, q, digits) for i in range(3))
        phi0 = qq ** (kk * (kk + 1) / 2) * p0
        phi1 = qq ** ((kk + 1) * (kk + 2) / 2) * p1
        tol = arb(10) ** (-(digits - 10))
        rec = (1 - qq ** (kk + 1)) * p1 + qq ** (kk + 2) * p2
        return [Check("phi_k + phi_(k+1) = 0", phi0 + phi1, arb(0), "numeric", tol=tol),
                Check("psi recursion", p0, rec, "numeric", tol=tol)]
    finally:
        ctx.prec = old


@register("psi-imaginary", "numeric",
          "imaginary Gaussian: psi_k = (1 - q^(k+1)) psi_(k+1) + q^(k+1) psi_(k+2), psi constant in k",
          {"kreal": Fraction(3, 10), "q": Fraction(1, 2), "digits": DEFAULT_DIGITS}, _psi_sector)
def _psi_imaginary(p):
    k, q, digits = p["kreal"], p["q"], p["digits"]
    old = ctx.prec
    ctx.prec = int(digits * 3.33) + 60
    try:
        kk, qq = _arb_of(k), _arb_of(q)
        p0, p1, p2 = (psi_imaginary(k + i, q, digits) for i in range(3))
        tol = arb(10) ** (-(digits - 10))
        return [Check("psi recursion", p0, (1 - qq ** (kk + 1)) * p1 + qq ** (kk + 1) * p2, "numeric", tol=tol),
                Check("psi_k = psi_(k+1)", p0, p1, "numeric", tol=tol)]
    finally:
        ctx.prec = old


def psi_enclosure_width(k, q, digits):
    """Radius of the residual phi_k + phi_(k+1) at the given precision."""
    old = ctx.prec
    ctx.prec = int(digits * 3.33) + 60
    try:
        k, q = as_fraction(k), as_fraction(q)
        kk, qq = _arb_of(k), _arb_of(q)
        r = (qq ** (kk * (kk + 1) / 2) * psi_sharp(k, q, digits)
             + qq ** ((kk + 1) * (kk + 2) / 2) * psi_sharp(k + 1, q, digits))
        return float(r.rad()) + abs(float(r.mid()))
    finally:
        ctx.prec = old


# ---------------------------------------------------------------- suites


def _suite_generic(order=None):
    D = {"order": order} if order is not None else {}
    cases = []
    for k in (1, 2, 3):
        cases += [("ct-gauss-delta", {"k": k, **D}), ("ct-gauss-mu", {"k": k, **D}),
                  ("jackson-gauss", {"k": k, **D}), ("jackson-gauss-even", {"k": k, **D})]
    for k in (1, 2):
        for m in range(4):
            for n in range(4):
                cases.append(("main-generic", {"k": k, "m": m, "n": n, "family": "p", **D}))
        for m in range(-3, 4):
            for n in range(-3, 4):
                cases.append(("main-generic", {"k": k, "m": m, "n": n, "family": "eps", **D}))
    for s in (1, 2, 3):
        cases.append(("eta-like", {"s": s, **D}))
    for kr in (Fraction(3, 10), Fraction(7, 10), Fraction(13, 10)):
        for q in (Fraction(3, 10), Fraction(1, 2)):
            cases.append(("psi-sharp", {"kreal": kr, "q": q}))
    cases.append(("psi-imaginary", {}))
    return cases


def _suite_roots(Nmax=12):
    cases = []
    for N in range(1, Nmax + 1):
        cases.append(("gauss-classical", {"N": N}))
        if N % 2 == 0:
            cases.append(("gauss-product", {"N": N}))
        if N % 2 and N > 1:
            cases.append(("l-square-sanity", {"N": N}))
        if N >= 2:
            cases.append(("gen-gauss-trivial", {"N": N}))
        for k in range(1, (N - 1) // 2 + 1):
            cases.append(("gauss-selberg", {"N": N, "k": k}))
        for k in range(1, N // 2 + 1):
            for sign in (1, -1):
                cases.append(("gen-gauss", {"N": N, "k": k, "sign": sign}))
            if N % 2 or (N // 2 - k) % 2 == 0:
                cases.append(("gen-gauss-simplified", {"N": N, "k": k}))
        for k in range(1, (N + 1) // 2):
            if 2 * k < N:
                for sign in (1, -1):
                    cases.append(("gauss-constant-prime", {"N": N, "k": k, "sign": sign}))
                    if N <= 10:
                        cases.append(("main-root-prime", {"N": N, "k": k, "sign": sign}))
                if N <= 10:
                    cases.append(("main-root-even", {"N": N, "k": k}))
                    cases.append(("fourier", {"N": N, "k": k, "variant": "prime"}))
                    cases.append(("fourier", {"N": N, "k": k, "variant": "even"}))
                    if N % 2:
                        cases.append(("fourier", {"N": N, "k": k, "variant": "prime-special"}))
        if N % 2 and N >= 3:
            for s in range(N // 2):
                cases.append(("khat-correspondence", {"N": N, "s": s}))
    return cases


def _suite_halfint(Nmax=12, order=None):
    D = {"order": order} if order is not None else {}
    cases = []
    for s in (0, 1, 2, 3):
        for sign in (1, -1):
            cases.append(("jackson-gauss-half", {"s": s, "sign": sign, **D}))
            cases.append(("jackson-gauss-half-even", {"s": s, "sign": sign, **D}))
        cases += [("negative-even-reduction", {"s": s}), ("negative-bar-sum", {"s": s}),
                  ("negative-coincidence", {"s": s})]
        if s >= 1:
            cases += [("eta-like", {"s": s, **D})]
        if s <= 2:
            cases.append(("rearranged", {"s": s}))
    for N in range(2, Nmax + 1):
        for twok in range(1, N, 2):
            k = Fraction(twok, 2)
            cases += [("gauss-constant-halfint", {"N": N, "k": k}), ("halfint-reduction", {"N": N, "k": k})]
            if N <= 10:
                cases += [("main-root-prime", {"N": N, "k": k}), ("main-root-halfint-even", {"N": N, "k": k}),
                          ("fourier", {"N": N, "k": k, "variant": "prime"}),
                          ("fourier", {"N": N, "k": k, "variant": "even"})]
        for s in range(0, 4):
            if 2 * s + 1 < N:
                for sign in (1, -1):
                    cases.append(("negative-prime", {"N": N, "s": s, "sign": sign}))
                if N <= 10:
                    cases += [("fourier", {"N": N, "k": -HALF - s, "variant": "bar_prime"}),
                              ("fourier", {"N": N, "k": -HALF - s, "variant": "bar_rearranged"})]
                cases += [("negative-even-reduction", {"N": N, "s": s}), ("negative-bar-sum", {"N": N, "s": s}),
                          ("negative-coincidence", {"N": N, "s": s}), ("rearranged", {"N": N, "s": s})]
                if s >= 1:
                    cases.append(("eta-like", {"N": N, "s": s}))
                    if N % 2:
                        cases.append(("shifted-product", {"N": N, "s": s}))
    return cases


def _suite_verlinde():
    return [("verlinde", {"s": 1}), ("verlinde", {"s": 1, "N": 5}), ("verlinde", {"s": 1, "N": 7}),
            ("verlinde", {"s": 2}), ("verlinde", {"s": 3}),
            ("verlinde-positivity", {"s": 1, "omega": Fraction(1, 4)}),
            ("verlinde-positivity", {"s": 2, "omega": Fraction(1, 16)}),
            ("verlinde-positivity", {"s": 3, "omega": Fraction(1, 24)})]


def suite_cases(name: str, **config) -> list:
    if name == "generic":
        return _suite_generic(config.get("order"))
    if name == "roots":
        return _suite_roots(config.get("Nmax", 12))
    if name == "halfint":
        return _suite_halfint(config.get("Nmax", 12), config.get("order"))
    if name == "verlinde":
        return _suite_verlinde()
    if name == "all":
        return (suite_cases("generic", **config) + suite_cases("roots", **config)
                + suite_cases("halfint", **config) + suite_cases("verlinde", **config))
    raise KeyError(f"unknown suite {name!r}; known: {SUITES}")


def run_suite(name: str, cases: list | None = None, **config) -> list:
    """Run a suite; reports come back in a deterministic order (by case key)."""
    if cases is None:
        cases = suite_cases(name, **config)
    reports = [verify(i, p) for i, p in cases]
    return sorted(reports, key=lambda r: (r.id, sorted((k, str(v)) for k, v in r.params.items())))


def summarize(name: str, reports: list, timing: bool = True) -> dict:
    counts = {o: sum(r.outcome == o for r in reports) for o in OUTCOMES}
    return {"suite": name, "total": len(reports), "verified": counts["verified"],
            "zero_case": counts["zero-case"], "mismatch": counts["mismatch"],
            "sector_violation": counts["sector-violation"], "degenerate": counts["degenerate"],
            "reports": [r.to_json(timing) for r in reports]}


__all__ = ["Check", "Report", "IdentitySpec", "REGISTRY", "OUTCOMES", "SUITES", "verify", "run_suite",
           "suite_cases", "summarize", "psi_sharp", "psi_imaginary", "psi_enclosure_width"]
