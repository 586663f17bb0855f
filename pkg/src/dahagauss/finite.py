"""Finite-dimensional modules: spectral sets, operators, forms, Fourier transforms.

Functions live on a finite set of points z (the spectral set).  X acts by q^z
(by q^(2z) on the even-subalgebra modules), T by the discretized
Demazure-Lusztig formula

    (T f)(z) = (t^(1/2) q^(2z) - t^(-1/2)) / (q^(2z) - 1) f(-z) - (t^(1/2) - t^(-1/2)) / (q^(2z) - 1) f(z),

and Y = (sp) T with (sp f)(z) = f(1/2 - z).  The even-subalgebra modules carry
X^2, T and T0 = Y^2 T^(-1), where T0 is the same formula for the reflection
z -> 1 - z and q^(1 - 2z) in place of q^(2z).

Scalars come from a Mode: cyclotomic numbers at a root of unity, or rational
functions of q^(1/4) for generic q (only the negative half-integral sets make
sense there).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import PoleAtRoot, RootContext, numeric_embed
from .daha import PBWElement
from .macdonald import rogers_p, spherical_epsilon
from .matrices import Matrix, span_rank
from .polyrep import LaurentPoly, Mode, evaluate
from .scalars import as_fraction, star


class SectorError(ValueError):
    """Parameters outside the sectors where the finite module is defined."""


class ModuleError(AssertionError):
    """Internal inconsistency: an operator leaves the function space or a relation fails."""


class NotDecomposable(ValueError):
    """The module is irreducible (certified), so there is nothing to decompose."""


class PositivityFailure(AssertionError):
    pass


VARIANTS = ("prime", "even")
HALF = Fraction(1, 2)


def conj(x):
    """The star involution on scalars: complex conjugation at roots, q^(1/4) -> q^(-1/4) otherwise."""
    return x.conj() if hasattr(x, "conj") else star(x)


def label_of(z: Fraction, k: Fraction) -> int:
    """An integer n with n# = z; the positive label is preferred."""
    n = 2 * z - k
    if n.denominator == 1 and n >= 1:
        return int(n)
    n = 2 * z + k
    if n.denominator == 1 and n <= 0:
        return int(n)
    raise SectorError(f"{z} is not of the form n# for k={k}")


def sharp_value(n: int, k) -> Fraction:
    """n# = (n + sgn(n - 1/2) k) / 2."""
    k = as_fraction(k)
    return (n + k) / 2 if n >= 1 else (n - k) / 2


def _negative_s(k: Fraction) -> int:
    if k.denominator != 2:
        raise SectorError(f"negative k={k} must be half-integral")
    return int(-k - HALF)


def check_sector(N: int | None, k, variant: str) -> Fraction:
    k = as_fraction(k)
    if variant not in VARIANTS:
        raise SectorError(f"unknown variant {variant!r}")
    if (2 * k).denominator != 1:
        raise SectorError(f"k={k} is neither integral nor half-integral")
    if k == 0:
        raise SectorError("k = 0 gives no finite module")
    if k < 0:
        _negative_s(k)
        if N is not None and not -Fraction(N, 2) < k:
            raise SectorError(f"negative k={k} needs -N/2 < k < 0 (N={N})")
        return k
    if N is None:
        raise SectorError("positive k needs a root of unity")
    if not 2 * k < N:
        raise SectorError(f"need 0 < k < N/2, got k={k}, N={N}")
    return k


def spectral_set(N: int | None, k, variant: str = "prime") -> list:
    """The points of the finite module, sorted increasingly.

    prime, k > 0:   {n# : 1 - (N - 2k) <= n <= N - 2k}, 2(N - 2k) points
    even,  k > 0:   {-k/2 - j} and {k/2 + j}, N - 2k points in total
    k = -1/2 - s:   2s + 1 points; the even set is a rearrangement of the prime one
    """
    variant, k, _ = resolve_variant(variant, N, k)
    k = check_sector(N, k, variant)
    if k < 0:
        s = _negative_s(k)
        if variant == "prime":
            pts = [sharp_value(n, k) for n in range(1, 2 * s + 2)]
        else:
            pts = [-k / 2 - j for j in range(s + 1)] + [k / 2 + j for j in range(1, s + 1)]
        return sorted(pts)
    d = int(N - 2 * k)
    if variant == "prime":
        return sorted(sharp_value(n, k) for n in range(1 - d, d + 1))
    if d % 2 == 0:
        lower, upper = d // 2, d // 2
    else:
        lower, upper = (d + 1) // 2, (d - 1) // 2
    return sorted([-k / 2 - j for j in range(lower)] + [k / 2 + j for j in range(1, upper + 1)])


def expected_dimension(N: int | None, k, variant: str) -> int:
    """2(N - 2k) for the full module, N - 2k for the even one, 2N - 2k = -2(k - N) for the bar sets."""
    variant, k, _ = resolve_variant(variant, N, k)
    if k < 0:
        return int(-2 * k)
    return int(2 * (N - 2 * k)) if variant == "prime" else int(N - 2 * k)


NAMED_VARIANTS = {
    "bowtie_prime": "prime",
    "prime-special": "prime",
    "bowtie_double_prime": "even",
    "bar_double_prime_halfint": "even",
    "bar_prime": "prime",
    "bar_rearranged": "even",
}


def resolve_variant(name: str, N: int | None, k, sign_half: int | None = None):
    """Map a named spectral set to (variant, k, sign_half).

    The bar sets accept either k = -1/2 - s or N/2 < k < N, the latter read as
    k - N.  prime-special is the full module at odd N with q^(1/2) = -exp(pi i/N).
    """
    k = as_fraction(k)
    if name in VARIANTS:
        return name, k, sign_half
    if name not in NAMED_VARIANTS:
        raise SectorError(f"unknown variant {name!r}")
    variant = NAMED_VARIANTS[name]
    if name.startswith("bar_") and name != "bar_double_prime_halfint":
        if N is not None and k > 0 and Fraction(N, 2) < k < N:
            k = k - N
        if k >= 0:
            raise SectorError(f"{name} needs negative half-integral k (or N/2 < k < N)")
    elif k <= 0:
        raise SectorError(f"{name} needs k > 0")
    if name == "bowtie_double_prime" and k.denominator != 1:
        raise SectorError("bowtie_double_prime needs integral k")
    if name == "bar_double_prime_halfint" and k.denominator != 2:
        raise SectorError("bar_double_prime_halfint needs half-integral k")
    if name == "prime-special":
        if N is None or N % 2 == 0 or k.denominator != 1:
            raise SectorError("prime-special needs odd N and integral k")
        sign_half = -1
    return variant, k, sign_half


def conventional_sign(N: int, k, variant: str) -> int:
    """Sign of q^(1/2) = +-exp(pi i/N) making the form positive.

    Integral k: either sign works (+1 returned).  Positive half-integral k: +1.
    Negative half-integral k: -1.
    """
    k = as_fraction(k)
    return -1 if k < 0 else 1


def mu_bullet(n: int, mode: Mode):
    """mu_bullet(n#) = q^(-k(n-1)) prod_{j=1}^{n-1} (1 - q^(2k+j)) / (1 - q^j); symmetric under n -> 1 - n."""
    if n <= 0:
        n = 1 - n
    k = mode.k
    val = mode.q_pow(-k * (n - 1))
    for j in range(1, n):
        val = val * (mode.one() - mode.q_pow(2 * k + j)) / (mode.one() - mode.q_pow(j))
    return val


class FiniteModule:
    """Functions on a spectral set with the action of the (even) double Hecke algebra."""

    def __init__(self, k, variant: str, mode: Mode, N: int | None = None):
        self.k = as_fraction(k)
        self.variant = variant
        self.mode = mode
        if mode.kind == "formal" or mode.k != self.k:
            raise ValueError("mode must have k specialized to the module's k")
        if mode.kind == "root":
            if N is not None and N != mode.root.N:
                raise ValueError("root context and N disagree")
            N = mode.root.N
        self.N = N
        self.points = spectral_set(N, self.k, variant)
        self.index = {z: i for i, z in enumerate(self.points)}
        self.labels = [label_of(z, self.k) for z in self.points]
        self._build()

    def __repr__(self):
        return f"FiniteModule({self.variant}, k={self.k}, {self.mode}, dim={self.dim})"

    @property
    def root(self) -> RootContext | None:
        return self.mode.root

    @property
    def dim(self) -> int:
        return len(self.points)

    @property
    def zero(self):
        return self.mode.zero()

    @property
    def one(self):
        return self.mode.one()

    def q(self, a):
        return self.mode.q_pow(a)

    def _matrix(self, rows):
        return Matrix(rows, self.zero, self.one)

    def identity(self):
        return Matrix.identity(self.dim, self.zero, self.one)

    def _two_point_operator(self, partner, coeff_partner, coeff_self, name):
        n = self.dim
        rows = [[self.zero] * n for _ in range(n)]
        for i, z in enumerate(self.points):
            a, b = coeff_partner(z), coeff_self(z)
            w = partner(z)
            if w in self.index:
                rows[i][self.index[w]] = rows[i][self.index[w]] + a
            elif not a.is_zero():
                raise ModuleError(f"{name} leaves the spectral set at z={z} (partner {w})")
            rows[i][i] = rows[i][i] + b
        return self._matrix(rows)

    def _build(self):
        mode = self.mode
        v, vinv = mode.v_pow(1), mode.v_pow(-1)
        c = v - vinv
        one = self.one

        def denom(w):
            d = w - one
            if d.is_zero():
                raise PoleAtRoot("a reflection denominator vanishes on the spectral set")
            return d

        self.T = self._two_point_operator(
            lambda z: -z,
            lambda z: (v * self.q(2 * z) - vinv) / denom(self.q(2 * z)),
            lambda z: -c / denom(self.q(2 * z)),
            "T",
        )
        if self.variant == "prime":
            self.X = Matrix.diagonal([self.q(z) for z in self.points], self.zero, one)
            self.Pi = self._two_point_operator(lambda z: HALF - z, lambda z: one, lambda z: self.zero, "sp")
            self.Y = self.Pi * self.T
        else:
            self.X = Matrix.diagonal([self.q(2 * z) for z in self.points], self.zero, one)
            self.T0 = self._two_point_operator(
                lambda z: 1 - z,
                lambda z: (v * self.q(1 - 2 * z) - vinv) / denom(self.q(1 - 2 * z)),
                lambda z: -c / denom(self.q(1 - 2 * z)),
                "T0",
            )
            self.Y = self.T0 * self.T  # Y^2 of the full algebra
        self.weights = [mu_bullet(n, mode) for n in self.labels]

    def generators(self) -> dict:
        if self.variant == "prime":
            return {"X": self.X, "T": self.T, "Y": self.Y}
        return {"X^2": self.X, "T": self.T, "T0": self.T0}

    # ---------------------------------------------------------------- vectors

    def discretize(self, f: LaurentPoly) -> list:
        if f.mode != self.mode:
            raise ValueError("polynomial is in a different mode")
        return [evaluate(f, z) for z in self.points]

    def epsilon_vector(self, n: int) -> list:
        return self.discretize(spherical_epsilon(n, self.mode))

    def rogers_vector(self, n: int) -> list:
        return self.discretize(rogers_p(n, self.mode))

    def gaussian_vector(self, sign: int = 1, normalized: bool = False) -> list:
        """q^(sign z^2) at the points; normalized divides by the value q^(sign k^2/4) at -k/2."""
        shift = self.k * self.k / 4 if normalized else 0
        return [self.q(sign * (z * z - shift)) for z in self.points]

    def weight_of(self, z):
        return self.weights[self.index[z]]

    def integral(self, f):
        """<f> = sum_z f(z) mu_bullet(z)."""
        total = self.zero
        for a, w in zip(f, self.weights):
            total = total + a * w
        return total

    def form(self, f, g):
        """<f, g> = <f g*>."""
        return self.integral([a * conj(b) for a, b in zip(f, g)])

    def pairing(self, m: int, n: int, gaussian: list, conjugate: bool = True):
        """<eps_m eps_n^* gamma> (conjugate=True) or <eps_m eps_n gamma>."""
        em, en = self.epsilon_vector(m), self.epsilon_vector(n)
        if conjugate:
            en = [conj(b) for b in en]
        return self.integral([a * b * g for a, b, g in zip(em, en, gaussian)])

    # ---------------------------------------------------------------- structure

    def relations(self) -> dict:
        """Defining relations of the (even) double Hecke algebra as matrix identities."""
        mode = self.mode
        v, vinv = mode.v_pow(1), mode.v_pow(-1)
        c = v - vinv
        I = self.identity()
        T, X = self.T, self.X
        out = {"(T - t^1/2)(T + t^-1/2) = 0": ((T - I.scale(v)) * (T + I.scale(vinv))).is_zero()}
        if self.variant == "prime":
            Y = self.Y
            Tinv = T - I.scale(c)
            out["TXT = X^-1"] = (T * X * T) == X.inverse()
            out["T^-1 Y T^-1 = Y^-1"] = (Tinv * Y * Tinv) == Y.inverse()
            out["Y^-1 X^-1 Y X T^2 = q^-1/2"] = (Y.inverse() * X.inverse() * Y * X * T * T).is_scalar(self.q(-HALF))
            out["(sp)^2 = 1"] = (self.Pi * self.Pi) == I
        else:
            T0, Xi = self.T0, X.inverse()
            out["(T0 - t^1/2)(T0 + t^-1/2) = 0"] = ((T0 - I.scale(v)) * (T0 + I.scale(vinv))).is_zero()
            out["T X^2 - X^-2 T = -c(1 + X^-2)"] = (T * X - Xi * T) == (I + Xi).scale(-c)
            out["T0 X^2 - q^2 X^-2 T0 = c(q + X^2)"] = (T0 * X - Xi.scale(self.q(2)) * T0) == (I.scale(self.q(1)) + X).scale(c)
        return out

    def check_relations(self):
        failed = [name for name, ok in self.relations().items() if not ok]
        if failed:
            raise ModuleError(f"relations fail in {self}: {failed}")

    def intertwines(self, window: int | None = None) -> bool:
        """Discretization commutes with the polynomial action on a window of monomials."""
        from .polyrep import T0_hat, T_hat, Y_hat

        window = window if window is not None else self.dim + 2
        step = 1 if self.variant == "prime" else 2
        for m in range(-window, window + 1):
            f = LaurentPoly.monomial(step * m, self.mode)
            d = self.discretize(f)
            if self.discretize(T_hat(f)) != self.T.apply(d):
                return False
            other = Y_hat(f) if self.variant == "prime" else T0_hat(f)
            op = self.Y if self.variant == "prime" else self.T0
            if self.discretize(other) != op.apply(d):
                return False
        return True

    def t_eigenspace_dims(self) -> tuple:
        """Dimensions of the T = t^(1/2) and T = -t^(-1/2) eigenspaces."""
        v, vinv = self.mode.v_pow(1), self.mode.v_pow(-1)
        I = self.identity()
        return (self.dim - (self.T - I.scale(v)).rank(), self.dim - (self.T + I.scale(vinv)).rank())

    def t_plus_basis(self) -> list:
        v = self.mode.v_pow(1)
        return (self.T - self.identity().scale(v)).nullspace()

    def y_eigenvalue(self, z):
        """Eigenvalue of Y (of Y^2 on even modules) on the eigenvector attached to z."""
        return self.q(-z) if self.variant == "prime" else self.q(-2 * z)

    def eigenbasis(self) -> Matrix:
        """Columns eps_n' for the labels n of the points."""
        cols = [self.epsilon_vector(n) for n in self.labels]
        return self._matrix([list(r) for r in zip(*cols)])

    def is_unitary(self) -> bool:
        """<H f, g> = <f, H^-1 g> for every generator H (the star sends each generator to its inverse)."""
        W = Matrix.diagonal(self.weights, self.zero, self.one)
        for H in self.generators().values():
            if H.transpose() * W != W * H.inverse().map(conj):
                return False
        return True

    def weights_hermitian(self) -> bool:
        return all(w == conj(w) for w in self.weights)

    def weights_positive(self, digits: int = 30, q_quarter=None) -> bool:
        """All weights real and positive numerically.

        At a root of unity the embedding zeta_M -> exp(2 pi i/M) is used; for
        generic q pass q_quarter, a complex ball for q^(1/4).
        """
        if not self.weights_hermitian():
            return False
        for w in self.weights:
            if self.mode.kind == "root":
                val = numeric_embed(w, digits)
            else:
                if q_quarter is None:
                    raise ValueError("generic q needs a numeric value of q^(1/4)")
                val = w.evaluate([q_quarter, q_quarter ** int(2 * self.k)])
            if not (val.real > 0 and abs(val.imag) < 10 ** (-(digits // 2))):
                return False
        return True

    def matrix_of(self, A: PBWElement) -> Matrix:
        """Matrix of a PBW element X^i T^e Y^j (full modules only)."""
        if self.variant != "prime":
            raise ValueError("PBW elements act on the full modules only")
        if A.mode != self.mode:
            raise ValueError("PBW element in a different mode")
        Xi, Yi = self.X.inverse(), self.Y.inverse()
        total = Matrix.zeros(self.dim, self.dim, self.zero, self.one)
        for (i, e, j), c in A.terms.items():
            M = (self.X if i >= 0 else Xi) ** abs(i)
            if e:
                M = M * self.T
            M = M * ((self.Y if j >= 0 else Yi) ** abs(j))
            total = total + M.scale(c)
        return total

    # ---------------------------------------------------------------- irreducibility

    def constant_is_cyclic(self) -> bool:
        """The constant function generates the whole module."""
        gens = list(self.generators().values())
        span = [[self.one] * self.dim]
        frontier = list(span)
        rank = 1
        while frontier and rank < self.dim:
            new = []
            for vec in frontier:
                for G in gens:
                    w = G.apply(vec)
                    r = span_rank(span + [w], self.zero, self.one)
                    if r > rank:
                        span.append(w)
                        new.append(w)
                        rank = r
            frontier = new
        return rank == self.dim

    def irreducibility_certificate(self) -> dict:
        """Simple Y-spectrum and a strongly connected generator graph in the Y-eigenbasis.

        With simple spectrum every submodule is spanned by eigenvectors; it is
        invariant only if closed under the nonzero entries of the generators
        written in the eigenbasis, so strong connectivity proves irreducibility.
        """
        eig = [self.y_eigenvalue(z) for z in self.points]
        simple = all(eig[i] != eig[j] for i in range(self.dim) for j in range(i))
        out = {"simple_spectrum": simple, "eigenbasis": False, "strongly_connected": False,
               "constant_cyclic": self.constant_is_cyclic()}
        if not simple:
            out["irreducible"] = False
            return out
        E = self.eigenbasis()
        if E.rank() < self.dim:
            out["irreducible"] = False
            return out
        out["eigenbasis"] = (self.Y * E) == E * Matrix.diagonal(eig, self.zero, self.one)
        Einv = E.inverse()
        adj = [set() for _ in range(self.dim)]
        for G in self.generators().values():
            H = Einv * G * E
            for i in range(self.dim):
                for j in range(self.dim):
                    if i != j and not H[i, j].is_zero():
                        adj[j].add(i)
        out["strongly_connected"] = _strongly_connected(adj)
        out["irreducible"] = out["eigenbasis"] and out["strongly_connected"]
        return out

    def is_irreducible(self) -> bool:
        return self.irreducibility_certificate()["irreducible"]

    # ---------------------------------------------------------------- decomposition

    def parity_shift(self):
        """The translation z -> z + shift pairing points in the decomposing cases, else None."""
        if self.mode.kind != "root" or self.k < 0:
            return None
        N, sign = self.N, self.root.sign_half
        integral = self.k.denominator == 1
        if self.variant == "prime":
            if integral and N % 2 == 1 and sign == -1:
                return Fraction(N, 2)
            return None
        if integral and N % 2 == 0:
            return Fraction(N // 2)
        if not integral and N % 2 == 1:
            return Fraction(N, 2)
        return None

    def decompose(self) -> list:
        """Parity components {f : f(z + shift) = (-1)^j f(z), z < 0}, j = 0, 1, as lists of basis vectors."""
        shift = self.parity_shift()
        if shift is None:
            if self.is_irreducible():
                raise NotDecomposable(f"{self} is irreducible")
            raise ModuleError(f"{self} is reducible but no parity decomposition is known")
        negative = [z for z in self.points if z < 0]
        if sorted(negative + [z + shift for z in negative]) != self.points:
            raise ModuleError("the parity shift does not pair the points")
        comps = []
        for j in (0, 1):
            sign = self.one if j == 0 else -self.one
            basis = []
            for z in negative:
                vec = [self.zero] * self.dim
                vec[self.index[z]] = self.one
                vec[self.index[z + shift]] = sign
                basis.append(vec)
            comps.append(basis)
        for basis in comps:
            r = span_rank(basis, self.zero, self.one)
            for G in self.generators().values():
                for vec in basis:
                    if span_rank(basis + [G.apply(vec)], self.zero, self.one) != r:
                        raise ModuleError("a parity component is not invariant")
        return comps

    def component_of(self, vec, comps=None) -> int | None:
        """0 or 1 if vec lies in that parity component, None otherwise."""
        comps = comps if comps is not None else self.decompose()
        for j, basis in enumerate(comps):
            r = span_rank(basis, self.zero, self.one)
            if span_rank(basis + [vec], self.zero, self.one) == r:
                return j
        return None

    # ---------------------------------------------------------------- Fourier

    def is_special(self) -> bool:
        """The module splits into two parity components, so the eps-images span only one of them."""
        return self.parity_shift() is not None

    def fourier_matrices(self):
        """(F_circ, F_bullet) with rows indexed by the points n#, columns by z.

        F_circ(f)(n#) = <f eps_n> / c and F_bullet(f)(n#) = <f eps_n^*>, with
        c = <1> so that F_bullet F_circ = id.  When the module splits into parity
        components the eps-images coincide in pairs, F_circ vanishes on
        component 1 and c = 2<1> makes F_bullet F_circ the projection onto
        component 0.
        """
        total = self.integral([self.one] * self.dim)
        if total.is_zero():
            raise ModuleError("<1> vanishes")
        if self.is_special():
            total = total + total
        eps = [self.epsilon_vector(n) for n in self.labels]
        Fc = self._matrix([[e[j] * self.weights[j] / total for j in range(self.dim)] for e in eps])
        Fb = self._matrix([[conj(e[j]) * self.weights[j] for j in range(self.dim)] for e in eps])
        return Fc, Fb

    def fourier_checks(self) -> dict:
        from .daha import generator, sigma, sigma_inv, tau_plus

        Fc, Fb = self.fourier_matrices()
        I = self.identity()
        if self.is_special():
            comps = self.decompose()
            proj_ok = all(Fb.apply(Fc.apply(v)) == v for v in comps[0])
            kill_ok = all(all(a.is_zero() for a in Fc.apply(v)) for v in comps[1])
            return {"F_bullet F_circ = id on component 0": proj_ok,
                    "F_circ = 0 on component 1": kill_ok}
        out = {"F_bullet F_circ = id": (Fb * Fc) == I}
        ok = True
        for i, m in enumerate(self.labels):
            img = Fc.apply([conj(a) for a in self.epsilon_vector(m)])
            expect = [self.zero] * self.dim
            expect[i] = self.one / self.weights[i]
            ok = ok and img == expect
        out["F_circ(eps_m^*) = mu(m#)^-1 delta"] = ok
        out["<f, g> = <1> <F_circ f, F_circ g>"] = self._fourier_unitary(Fc)
        if self.variant == "prime":
            Fci, Fbi = Fc.inverse(), Fb.inverse()
            G = Matrix.diagonal(self.gaussian_vector(1), self.zero, self.one)
            ok_c = ok_b = ok_g = True
            for g in "XTY":
                H = generator(g, self.mode)
                Hm = self.matrix_of(H)
                ok_c = ok_c and Fc * Hm * Fci == self.matrix_of(sigma(H))
                ok_b = ok_b and Fb * Hm * Fbi == self.matrix_of(sigma_inv(H))
                ok_g = ok_g and G * Hm * G.inverse() == self.matrix_of(tau_plus(H))
            out["F_circ H F_circ^-1 = sigma(H)"] = ok_c
            out["F_bullet H F_bullet^-1 = sigma^-1(H)"] = ok_b
            out["gamma H gamma^-1 = tau_+(H)"] = ok_g
        return out

    def _fourier_unitary(self, Fc) -> bool:
        """Plancherel: <f, g> = <1> <F_circ f, F_circ g>."""
        total = self.integral([self.one] * self.dim)
        for i in range(self.dim):
            for j in range(i, self.dim):
                f = [self.one if a == i else self.zero for a in range(self.dim)]
                g = [self.one if a == j else self.zero for a in range(self.dim)]
                Ff, Fg = Fc.apply(f), Fc.apply(g)
                if self.form(f, g) != self.form(Ff, Fg) * total:
                    return False
        return True


def _strongly_connected(adj: list) -> bool:
    n = len(adj)
    if n <= 1:
        return True

    def reach(graph):
        seen, stack = {0}, [0]
        while stack:
            a = stack.pop()
            for b in graph[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == n

    rev = [set() for _ in range(n)]
    for a in range(n):
        for b in adj[a]:
            rev[b].add(a)
    return reach(adj) and reach(rev)


def build_module(N: int, k, variant: str = "prime", sign_half: int | None = None, quarter: int = 0,
                 check: bool = True) -> FiniteModule:
    """The module at q = exp(2 pi i/N); the default sign of q^(1/2) is the positivity convention."""
    variant, k, sign_half = resolve_variant(variant, N, k, sign_half)
    check_sector(N, k, variant)
    if sign_half is None:
        sign_half = conventional_sign(N, k, variant)
    module = FiniteModule(k, variant, Mode.at_root(RootContext(N, sign_half, quarter), k), N)
    if check:
        module.check_relations()
    return module


def build_generic_module(k, variant: str = "even", check: bool = True) -> FiniteModule:
    """Module over Q(q^(1/4)) for k = -1/2 - s, defined for any q."""
    variant, k, _ = resolve_variant(variant, None, k)
    if k >= 0:
        raise SectorError("generic-q modules exist for negative half-integral k only")
    module = FiniteModule(k, variant, Mode.at_k(k))
    if check:
        module.check_relations()
    return module


def correspondence_isomorphic(N: int, s: int) -> dict:
    """For N = 2M + 1 and q^(1/2) = -exp(pi i/N): the even modules at k = M - s and k = -1/2 - s agree.

    Both carry the same X^2-spectrum; t^(1/2) agrees up to sign, and the
    automorphism T -> -T, T0 -> -T0 absorbs the sign.  An invertible
    intertwiner P with P A = B P for all generators is searched by linear algebra.
    """
    if N % 2 == 0:
        raise SectorError("the correspondence needs odd N")
    M = N // 2
    if not 0 <= s < M:
        raise SectorError(f"need 0 <= s < M, got s={s}")
    A = build_module(N, M - s, "even", -1)
    B = build_module(N, -HALF - s, "even", -1)
    vA, vB = A.mode.v_pow(1), B.mode.v_pow(1)
    if vA == vB:
        twist = 1
    elif vA == -vB:
        twist = -1
    else:
        return {"t_half_match": False, "isomorphic": False}
    pairs = [(A.X, B.X), (A.T, B.T.scale(twist * B.one)), (A.T0, B.T0.scale(twist * B.one))]
    P = _intertwiner(pairs, A.dim, A.zero, A.one)
    return {
        "t_half_match": True,
        "twist": twist,
        "same_x2_spectrum": sorted(map(str, (A.X[i, i] for i in range(A.dim)))) == sorted(map(str, (B.X[i, i] for i in range(B.dim)))),
        "isomorphic": P is not None,
    }


def _intertwiner(pairs, d, zero, one):
    """An invertible P with P A = B P for all (A, B), or None."""
    rows = []
    for A, B in pairs:
        # (P A - B P)[i, j] = sum_l P[i, l] A[l, j] - B[i, l] P[l, j]
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for l in range(d):
                    row[i * d + l] = row[i * d + l] + A[l, j]
                    row[l * d + j] = row[l * d + j] - B[i, l]
                rows.append(row)
    null = Matrix(rows, zero, one).nullspace()
    for vec in null:
        P = Matrix([vec[i * d:(i + 1) * d] for i in range(d)], zero, one)
        if P.rank() == d:
            return P
    if len(null) > 1:
        total = null[0]
        for vec in null[1:]:
            total = [a + b for a, b in zip(total, vec)]
        P = Matrix([total[i * d:(i + 1) * d] for i in range(d)], zero, one)
        if P.rank() == d:
            return P
    return None


def module_report(N: int, k, variant: str = "prime", sign_half: int | None = None, digits: int = 30) -> dict:
    """Structure of one finite module: dimensions, spectra, decomposition, form and Fourier checks.

    `failures` lists every structural check that did not hold; sector errors propagate.
    """
    name = variant
    variant, k, sign_half = resolve_variant(name, N, k, sign_half)
    check_sector(N, k, variant)
    if sign_half is None:
        sign_half = conventional_sign(N, k, variant)
    m = build_module(N, k, variant, sign_half, check=False)
    failures = []
    report = {"N": N, "k": str(k), "variant": name, "module": variant, "sign_half": sign_half,
              "dim": m.dim, "expected_dim": expected_dimension(N, k, variant),
              "points": [str(z) for z in m.points], "labels": list(m.labels),
              "y_spectrum": [str(m.y_eigenvalue(z)) for z in m.points],
              "t_eigenspace_dims": list(m.t_eigenspace_dims())}
    if report["dim"] != report["expected_dim"]:
        failures.append("dimension")
    relations = m.relations()
    report["relations"] = relations
    failures += [f"relation {r}" for r, ok in relations.items() if not ok]
    report["unitary"] = m.is_unitary()
    report["weights_positive"] = m.weights_positive(digits)
    failures += [key for key in ("unitary", "weights_positive") if not report[key]]
    if m.is_special():
        comps = m.decompose()
        report["irreducible"] = False
        report["components"] = [len(c) for c in comps]
    else:
        cert = m.irreducibility_certificate()
        report["irreducible"] = cert["irreducible"]
        report["irreducibility_certificate"] = cert
        report["components"] = [m.dim]
        if not cert["irreducible"]:
            failures.append("irreducibility")
    fourier = m.fourier_checks()
    report["fourier"] = fourier
    failures += [f"fourier {f}" for f, ok in fourier.items() if not ok]
    report["failures"] = failures
    return report
