"""Exact computations for the one-dimensional double affine Hecke algebra.

Polynomial and finite-dimensional representations, nonsymmetric Macdonald,
spherical and Rogers polynomials, q-Fourier transforms, and a catalog of
q-series and Gaussian-sum identities checked for generic q (truncated
series) and at roots of unity (cyclotomic arithmetic).
"""

from .cyclotomic import CycNumber, RootContext, numeric_embed
from .finite import FiniteModule, build_generic_module, build_module, module_report, spectral_set
from .identities import REGISTRY, SUITES, run_suite, summarize, verify
from .macdonald import macdonald_e, rogers_p, spherical_epsilon
from .polyrep import LaurentPoly, Mode
from .scalars import QSeries, QTScalar
from .verlinde import VerlindeAlgebra, deformed_verlinde

__version__ = "0.1.0"

__all__ = [
    "CycNumber", "RootContext", "numeric_embed", "FiniteModule", "build_module", "build_generic_module",
    "module_report", "spectral_set", "REGISTRY", "SUITES", "verify", "run_suite", "summarize",
    "macdonald_e", "spherical_epsilon", "rogers_p", "LaurentPoly", "Mode", "QSeries", "QTScalar",
    "VerlindeAlgebra", "deformed_verlinde",
]
