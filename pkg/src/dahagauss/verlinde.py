"""Deformed little Verlinde algebra: symmetric functions on the even module at k = -1/2 - s.

V is the T = t^(1/2) eigenspace of the even module; it consists of the
functions with f(-z) = f(z) and is determined by the values at the points
z >= 0.  It exists for generic q, and the products of Rogers polynomials
restricted to V give a commutative algebra with basis p'_0, p'_2, ..., p'_2s.
"""

from __future__ import annotations

from fractions import Fraction

from flint import acb, arb, ctx

from .finite import HALF, FiniteModule, PositivityFailure, build_generic_module, build_module, conj
from .macdonald import rogers_p
from .matrices import Matrix
from .polyrep import Mode, evaluate


def verlinde_module(s: int, N: int | None = None) -> FiniteModule:
    """The even module at k = -1/2 - s, generic q or q^(1/2) = -exp(pi i/N)."""
    if s < 1:
        raise ValueError("s >= 1 is needed for a nontrivial algebra")
    k = -HALF - s
    if N is None:
        return build_generic_module(k, "even")
    return build_module(N, k, "even", -1)


class VerlindeAlgebra:
    def __init__(self, s: int, N: int | None = None):
        self.s = s
        self.module = verlinde_module(s, N)
        self.mode: Mode = self.module.mode
        self.k = self.module.k
        self.support = [z for z in self.module.points if z > 0]
        # the point -k/2 is not paired; each other point z > 0 carries mu(z) + mu(-z)
        self.weights = []
        for z in self.support:
            w = self.module.weight_of(z)
            if -z in self.module.index:
                w = w + self.module.weight_of(-z)
            self.weights.append(w)

    @property
    def dim(self) -> int:
        return len(self.support)

    def q(self, a):
        return self.mode.q_pow(a)

    def values(self, f) -> list:
        return [evaluate(f, z) for z in self.support]

    def basis(self) -> list:
        """Values of p'_0, p'_2, ..., p'_2s on the support."""
        return [self.values(rogers_p(2 * j, self.mode)) for j in range(self.s + 1)]

    def is_t_plus(self) -> bool:
        """The symmetric extensions of the basis span the T = t^(1/2) eigenspace."""
        m = self.module
        dims = m.t_eigenspace_dims()
        if dims[0] != self.dim:
            return False
        v = self.mode.v_pow(1)
        for vals in self.basis():
            full = [vals[self.support.index(abs(z))] for z in m.points]
            if m.T.apply(full) != [v * a for a in full]:
                return False
        return True

    def structure_constants(self) -> list:
        """N[a][b] = coordinates of p'_2a p'_2b in the basis p'_0, ..., p'_2s."""
        B = self.basis()
        one, zero = self.mode.one(), self.mode.zero()
        P = Matrix([list(col) for col in zip(*B)], zero, one)
        Pinv = P.inverse()
        out = []
        for a in range(self.dim):
            row = []
            for b in range(self.dim):
                prod = [x * y for x, y in zip(B[a], B[b])]
                row.append(Pinv.apply(prod))
            out.append(row)
        return out

    def form(self, f: list, g: list):
        """Restriction of the module form to symmetric functions."""
        total = self.mode.zero()
        for a, b, w in zip(f, g, self.weights):
            total = total + a * conj(b) * w
        return total

    def form_agrees_with_module(self) -> bool:
        m = self.module
        B = self.basis()
        for f in B:
            for g in B:
                ff = [f[self.support.index(abs(z))] for z in m.points]
                gg = [g[self.support.index(abs(z))] for z in m.points]
                if m.form(ff, gg) != self.form(f, g):
                    return False
        return True

    def gaussian(self) -> list:
        """q^(z^2 - k^2/4), equal to 1 at -k/2."""
        return [self.q(z * z - self.k * self.k / 4) for z in self.support]

    # ------------------------------------------------------------ explicit s = 1 formulas

    def check_s1(self) -> dict:
        """The explicit s = 1 formulas: structure constants, form and Gaussian summation."""
        if self.s != 1:
            raise ValueError("the explicit formulas are for s = 1")
        q, one = self.q, self.mode.one()
        h = q(HALF)
        out = {}
        p2 = rogers_p(2, self.mode)
        printed_p2 = {2: one, -2: one, 0: one + q(1) + h + one + q(-HALF) + q(-1)}
        out["p_2 = X^2 + X^-2 + 1 + (q + q^1/2 + 1 + q^-1/2 + q^-1)"] = (
            all(p2.coefficient(e) == c for e, c in printed_p2.items()) and len(p2.terms) == 3)
        N = self.structure_constants()
        A = q(Fraction(-3, 2)) * (one + h) ** 2 * (one + q(1)) ** 2
        B = -A * q(-1) * (one + h) * (one + q(Fraction(3, 2)))
        out["(p'_2)^2 = A p'_2 + B p'_0"] = N[1][1] == [B, A]
        i1, i3 = self.support.index(Fraction(1, 4)), self.support.index(Fraction(3, 4))
        w = one - h - q(-HALF)
        out["form weights 1 and 1 - q^1/2 - q^-1/2"] = self.weights[i3] == one and self.weights[i1] == w
        out["form agrees with the module form"] = self.form_agrees_with_module()
        g = self.gaussian()
        out["g(3/4) = 1, g(1/4) = q^-1/2"] = g[i3] == one and g[i1] == q(-HALF)
        ok = True
        for a in (0, 2, 4):
            for b in (0, 2, 4):
                pa, pb = rogers_p(a, self.mode), rogers_p(b, self.mode)
                lhs = (evaluate(pa, Fraction(3, 4)) * evaluate(pb, Fraction(3, 4))
                       + q(-HALF) * w * evaluate(pa, Fraction(1, 4)) * evaluate(pb, Fraction(1, 4)))
                rhs = ((one - q(-1)) / (one + h) * q(Fraction(3 * (a + b) - a * a - b * b, 4))
                       * evaluate(pa, Fraction(b, 2) - Fraction(3, 4)) * evaluate(pb, Fraction(3, 4)))
                ok = ok and lhs == rhs
        out["Gaussian summation for p_m, p_n, m, n in {0, 2, 4}"] = ok
        if self.mode.kind == "root" and self.mode.root.N == 5:
            out["N=5: (p'_2)^2 = p'_2 + p'_0"] = N[1][1] == [one, one]
            out["N=5: 1 - q^1/2 - q^-1/2 = (q + q^-1)^-2"] = w == one / (q(1) + q(-1)) ** 2
        return out

    # ------------------------------------------------------------ positivity

    def numeric_weights(self, omega, digits: int = 30) -> list:
        """Weights at q^(1/2) = -exp(pi i omega) as complex balls."""
        if self.mode.kind != "k":
            raise ValueError("numeric weights are taken from the generic-q algebra")
        old = ctx.prec
        ctx.prec = int(digits * 3.33) + 20
        try:
            om = arb(omega) if not isinstance(omega, Fraction) else arb(omega.numerator) / omega.denominator
            u = acb((1 + om) / 2).exp_pi_i()
            return [w.evaluate([u, u ** int(2 * self.k)], acb(1)) for w in self.weights]
        finally:
            ctx.prec = old

    def is_positive(self, omega, digits: int = 30) -> bool:
        tol = arb(10) ** (-(digits // 2))
        for w in self.numeric_weights(omega, digits):
            if not (w.real > 0 and abs(w.imag) < tol):
                return False
        return True

    def assert_positive(self, omega, digits: int = 30):
        if not self.is_positive(omega, digits):
            raise PositivityFailure(f"form not positive at omega={omega}, s={self.s}")


def deformed_verlinde(s: int = 1, N: int | None = None, omega=Fraction(1, 4)) -> dict:
    """Report for the deformed little Verlinde algebra at k = -1/2 - s."""
    alg = VerlindeAlgebra(s, N)
    report = {"s": s, "k": str(alg.k), "mode": str(alg.mode), "dim": alg.dim,
              "support": [str(z) for z in alg.support], "t_plus": alg.is_t_plus()}
    if s == 1:
        report["checks"] = alg.check_s1()
    else:
        report["checks"] = {"form agrees with the module form": alg.form_agrees_with_module()}
    if N is None and omega is not None:
        report["omega"] = str(omega)
        report["positive"] = alg.is_positive(omega)
    return report


def omega_sufficient(s: int, omega) -> bool:
    """The sufficient positivity range 0 < omega s < 1/2."""
    return 0 < omega * s < Fraction(1, 2) if isinstance(omega, Fraction) else 0 < omega * s < 0.5


__all__ = ["VerlindeAlgebra", "deformed_verlinde", "verlinde_module", "omega_sufficient"]
