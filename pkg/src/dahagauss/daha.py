"""The rank-one double affine Hecke algebra in the PBW basis X^i T^e Y^j.

Products are straightened with a small set of rules, all consequences of

    T X T = X^-1,   T^-1 Y T^-1 = Y^-1,   Y^-1 X^-1 Y X T^2 = q^(-1/2),
    (T - t^(1/2)) (T + t^(-1/2)) = 0.

With c = t^(1/2) - t^(-1/2) and pi = Y T^-1 = T Y^-1 (an involution with
pi X pi = q^(1/2) X^-1) they read, for a Laurent polynomial f:

    T T      = c T + 1
    T f(X)   = f(X^-1) T + c (f(X^-1) - f(X)) / (X^2 - 1)
    Y T      = T Y^-1 + c Y,          Y^-1 T = T Y - c Y
    Y f(X)   = f'(X) Y + c g'(X) T Y^-1
    Y^-1 f(X) = (T - c) h(X) T Y^-1

where primes denote X -> q^(1/2) X^-1 applied to s f and to the divided
difference g of f, and h(X) = f(q^(1/2) X^-1).  The rules are checked against
the polynomial representation by `faithfulness_check`.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .polyrep import (
    LaurentPoly,
    Mode,
    T0_hat,
    T_hat,
    T_hat_inv,
    X_mul,
    Y_hat,
    Y_hat_inv,
    _is_zero,
    divided_difference,
)

TOKENS = ("X", "x", "T", "t", "Y", "y")


class PBWElement:
    """sum c X^i T^e Y^j, keyed by (i, e, j) with e in {0, 1}."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: dict, mode: Mode):
        self.mode = mode
        self.terms = {k: c for k, c in terms.items() if not _is_zero(c)}

    @classmethod
    def one(cls, mode):
        return cls({(0, 0, 0): mode.one()}, mode)

    @classmethod
    def monomial(cls, i, e, j, mode, coeff=None):
        return cls({(i, e, j): mode.one() if coeff is None else coeff}, mode)

    @classmethod
    def scalar(cls, c, mode):
        return cls({(0, 0, 0): c}, mode)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return PBWElement(out, self.mode)

    def __neg__(self):
        return PBWElement({k: -c for k, c in self.terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return PBWElement({k: v * c for k, v in self.terms.items()}, self.mode)

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return pbw_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, e, j), c in sorted(self.terms.items()):
            word = "".join(s for s in (f"X^{i}" if i else "", "T" if e else "", f"Y^{j}" if j else "") if s)
            parts.append(f"({c})*{word or '1'}")
        return " + ".join(parts)


def _add(out, key, c):
    if key in out:
        out[key] = out[key] + c
    else:
        out[key] = c


def _pi_image(mode, r):
    """X^r -> (q^(1/2) X^-1)^r = q^(r/2) X^-r; returns (coefficient, new exponent)."""
    return mode.u_pow(2 * r), -r


def _laurent_dd(a: int, mode: Mode) -> dict:
    """Divided difference (X^-a - X^a) / (X^2 - 1) as {exponent: integer coefficient}."""
    if a > 0:
        return {r: -1 for r in range(-a, a - 1, 2)}
    if a < 0:
        return {r: 1 for r in range(a, -a - 1, 2)}
    return {}


def left_X(m: int, B: PBWElement) -> PBWElement:
    return PBWElement({(i + m, e, j): c for (i, e, j), c in B.terms.items()}, B.mode)


def left_T(B: PBWElement) -> PBWElement:
    mode = B.mode
    c = mode.c
    out = {}
    for (a, e, d), b in B.terms.items():
        # T X^a = X^-a T + c * dd(X^a)
        if e == 0:
            _add(out, (-a, 1, d), b)
        else:
            _add(out, (-a, 1, d), b * c)
            _add(out, (-a, 0, d), b)
        bc = b * c
        for r, k in _laurent_dd(a, mode).items():
            _add(out, (r, e, d), bc * k)
    return PBWElement(out, mode)


def left_Y(B: PBWElement) -> PBWElement:
    mode = B.mode
    c = mode.c
    out = {}
    for (a, e, d), b in B.terms.items():
        # Y X^a = q^(-a/2) X^a Y + c * sum_r g_r q^(r/2) X^-r T Y^-1
        lead = b * mode.u_pow(-2 * a)
        if e == 0:
            _add(out, (a, 0, d + 1), lead)
        else:
            # Y T = T Y^-1 + c Y
            _add(out, (a, 1, d - 1), lead)
            _add(out, (a, 0, d + 1), lead * c)
        bc = b * c
        for r, k in _laurent_dd(a, mode).items():
            coef, r2 = _pi_image(mode, r)
            w = bc * coef * k
            if e == 0:
                _add(out, (r2, 1, d - 1), w)
            else:
                # T Y^-1 T = Y
                _add(out, (r2, 0, d + 1), w)
    return PBWElement(out, mode)


def left_Yinv(B: PBWElement) -> PBWElement:
    mode = B.mode
    c = mode.c
    inner = {}
    for (a, e, d), b in B.terms.items():
        # Y^-1 X^a = (T - c) q^(a/2) X^-a T Y^-1
        coef, a2 = _pi_image(mode, a)
        w = b * coef
        if e == 0:
            _add(inner, (a2, 1, d - 1), w)
        else:
            # T Y^-1 T = Y
            _add(inner, (a2, 0, d + 1), w)
    inner = PBWElement(inner, mode)
    return left_T(inner) - inner.scale(c)


def left_token(tok: str, B: PBWElement) -> PBWElement:
    if tok == "X":
        return left_X(1, B)
    if tok == "x":
        return left_X(-1, B)
    if tok == "T":
        return left_T(B)
    if tok == "t":
        return left_T(B) - B.scale(B.mode.c)
    if tok == "Y":
        return left_Y(B)
    if tok == "y":
        return left_Yinv(B)
    raise ValueError(f"unknown token {tok!r}")


def pbw_mul(A: PBWElement, B: PBWElement) -> PBWElement:
    if A.mode != B.mode:
        raise ValueError("mode mismatch")
    total = PBWElement({}, A.mode)
    for (i, e, j), c in A.terms.items():
        acc = B
        step = left_Y if j > 0 else left_Yinv
        for _ in range(abs(j)):
            acc = step(acc)
        if e:
            acc = left_T(acc)
        acc = left_X(i, acc)
        total = total + acc.scale(c)
    return total


def normal_form(word, mode: Mode | None = None) -> PBWElement:
    """Normal form of a word in the tokens X, x = X^-1, T, t = T^-1, Y, y = Y^-1."""
    mode = mode or Mode.formal()
    acc = PBWElement.one(mode)
    for tok in reversed(list(word)):
        acc = left_token(tok, acc)
    return acc


def generator(tok: str, mode: Mode) -> PBWElement:
    return normal_form(tok, mode)


# ---------------------------------------------------------------- automorphisms


def apply_hom(A: PBWElement, images: dict) -> PBWElement:
    """Apply the algebra map given on X, x, T, Y, y (scalars fixed)."""
    mode = A.mode
    total = PBWElement({}, mode)
    one = PBWElement.one(mode)
    for (i, e, j), c in A.terms.items():
        acc = one
        for _ in range(abs(i)):
            acc = acc * images["X" if i > 0 else "x"]
        if e:
            acc = acc * images["T"]
        for _ in range(abs(j)):
            acc = acc * images["Y" if j > 0 else "y"]
        total = total + acc.scale(c)
    return total


def _images(mode, X, x, T, Y, y):
    return {"X": X, "x": x, "T": T, "Y": Y, "y": y}


def tau_plus_images(mode):
    """tau_+: X -> X, T -> T, Y -> q^(-1/4) X Y."""
    g = lambda w: normal_form(w, mode)
    return _images(mode, g("X"), g("x"), g("T"),
                   g("XY").scale(mode.u_pow(-1)), g("yx").scale(mode.u_pow(1)))


def tau_minus_images(mode):
    """tau_-: X -> q^(1/4) Y X, T -> T, Y -> Y."""
    g = lambda w: normal_form(w, mode)
    return _images(mode, g("YX").scale(mode.u_pow(1)), g("xy").scale(mode.u_pow(-1)),
                   g("T"), g("Y"), g("y"))


def tau_minus_inv_images(mode):
    """tau_-^(-1): X -> q^(-1/4) Y^-1 X, T -> T, Y -> Y."""
    g = lambda w: normal_form(w, mode)
    return _images(mode, g("yX").scale(mode.u_pow(-1)), g("xY").scale(mode.u_pow(1)),
                   g("T"), g("Y"), g("y"))


def tau_plus(A):
    return apply_hom(A, tau_plus_images(A.mode))


def tau_minus(A):
    return apply_hom(A, tau_minus_images(A.mode))


def tau_minus_inv(A):
    return apply_hom(A, tau_minus_inv_images(A.mode))


def sigma(A):
    """sigma = tau_+ tau_-^(-1) tau_+ as a composition of maps (tau_+ applied first)."""
    return tau_plus(tau_minus_inv(tau_plus(A)))


def sigma_inv(A):
    """Inverse of `sigma`: tau_+^(-1) tau_- tau_+^(-1)."""
    mode = A.mode
    g = lambda w: normal_form(w, mode)
    tp_inv = _images(mode, g("X"), g("x"), g("T"), g("xY").scale(mode.u_pow(1)), g("yX").scale(mode.u_pow(-1)))
    B = apply_hom(A, tp_inv)
    B = tau_minus(B)
    return apply_hom(B, tp_inv)


def phi(A: PBWElement) -> PBWElement:
    """Anti-involution X -> Y^-1, Y -> X^-1, T -> T: X^i T^e Y^j -> X^-j T^e Y^-i."""
    return PBWElement({(-j, e, -i): c for (i, e, j), c in A.terms.items()}, A.mode)


def eval_t(A: PBWElement):
    """Evaluation {c X^i T^e Y^j} = c t^(-i/2) t^(e/2) t^(j/2)."""
    mode = A.mode
    total = mode.zero()
    for (i, e, j), c in A.terms.items():
        total = total + c * mode.v_pow(-i + e + j)
    return total


def pair_t(A: PBWElement, B: PBWElement):
    """{A, B} = {phi(A) B}."""
    return eval_t(pbw_mul(phi(A), B))


# ---------------------------------------------------------------- polynomial representation


def act(A: PBWElement, f: LaurentPoly) -> LaurentPoly:
    """Action of A on f through X, T, Y -> X, T_hat, Y_hat."""
    total = LaurentPoly({}, f.mode)
    for (i, e, j), c in A.terms.items():
        g = f
        op = Y_hat if j > 0 else Y_hat_inv
        for _ in range(abs(j)):
            g = op(g)
        if e:
            g = T_hat(g)
        total = total + X_mul(g, i).scale(c)
    return total


def act_word(word, f: LaurentPoly) -> LaurentPoly:
    ops = {"X": lambda g: X_mul(g, 1), "x": lambda g: X_mul(g, -1), "T": T_hat, "t": T_hat_inv,
           "Y": Y_hat, "y": Y_hat_inv}
    for tok in reversed(list(word)):
        f = ops[tok](f)
    return f


def to_polyrep(A: PBWElement, window: int) -> dict:
    """Images of X^m, |m| <= window, under A."""
    return {m: act(A, LaurentPoly.monomial(m, A.mode)) for m in range(-window, window + 1)}


def random_word(rng: random.Random, max_len: int = 8) -> str:
    n = rng.randint(0, max_len)
    return "".join(rng.choice(TOKENS) for _ in range(n))


def faithfulness_check(word, window: int = 12, mode: Mode | None = None) -> bool:
    """The normal form of `word` and the word itself act identically on X^m, |m| <= window."""
    mode = mode or Mode.formal()
    A = normal_form(word, mode)
    for m in range(-window, window + 1):
        f = LaurentPoly.monomial(m, mode)
        if act(A, f) != act_word(word, f):
            return False
    return True


def relations_hold(mode: Mode | None = None) -> dict:
    """The defining relations, each as normal form of (lhs - rhs) == 0."""
    mode = mode or Mode.formal()
    nf = lambda w: normal_form(w, mode)
    v = mode.v_pow(1)
    one = PBWElement.one(mode)
    quad = nf("TT") - nf("T").scale(v - mode.v_pow(-1)) - one
    return {
        "TXT=X^-1": (nf("TXT") - nf("x")).is_zero(),
        "T^-1 Y T^-1=Y^-1": (nf("tYt") - nf("y")).is_zero(),
        "Y^-1 X^-1 Y X T^2=q^-1/2": (nf("yxYXTT") - one.scale(mode.u_pow(-2))).is_zero(),
        "(T-t^1/2)(T+t^-1/2)=0": quad.is_zero(),
    }


def even_subalgebra_check(window: int = 6, mode: Mode | None = None) -> bool:
    """Y^2 T^-1 acts on Laurent polynomials as T0_hat."""
    mode = mode or Mode.formal()
    for m in range(-window, window + 1):
        f = LaurentPoly.monomial(m, mode)
        if Y_hat(Y_hat(T_hat_inv(f))) != T0_hat(f):
            return False
    return True


def _relation_residues(img: dict, mode: Mode, anti: bool = False) -> dict:
    """Each defining relation evaluated on images of the generators (reversed products for anti maps)."""
    def prod(*factors):
        factors = factors[::-1] if anti else factors
        out = PBWElement.one(mode)
        for f in factors:
            out = pbw_mul(out, f)
        return out

    one = PBWElement.one(mode)
    c = mode.v_pow(1) - mode.v_pow(-1)
    X, x, T, Y, y = (img[g] for g in "XxTYy")
    Tinv = T - one.scale(c)
    return {
        "X X^-1 = 1": prod(X, x) - one,
        "Y Y^-1 = 1": prod(Y, y) - one,
        "TXT = X^-1": prod(T, X, T) - x,
        "T^-1 Y T^-1 = Y^-1": prod(Tinv, Y, Tinv) - y,
        "Y^-1 X^-1 Y X T^2 = q^-1/2": prod(y, x, Y, X, T, T) - one.scale(mode.u_pow(-2)),
        "(T - t^1/2)(T + t^-1/2) = 0": prod(T - one.scale(mode.v_pow(1)), T + one.scale(mode.v_pow(-1))),
    }


def automorphisms_preserve_relations(mode: Mode | None = None) -> dict:
    """tau_+, tau_-, sigma and the anti-involution phi respect every defining relation."""
    mode = mode or Mode.formal()
    gens = {g: generator(g, mode) for g in TOKENS if g != "t"}
    out = {}
    for name, fn, anti in (("tau_+", tau_plus, False), ("tau_-", tau_minus, False),
                           ("sigma", sigma, False), ("phi", phi, True)):
        img = {g: fn(A) for g, A in gens.items()}
        for rel, res in _relation_residues(img, mode, anti).items():
            out[f"{name}: {rel}"] = res.is_zero()
    return out


def phi_reverses_products(A: PBWElement, B: PBWElement) -> bool:
    return phi(pbw_mul(A, B)) == pbw_mul(phi(B), phi(A))
