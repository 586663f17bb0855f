from fractions import Fraction

import pytest

from dahagauss.finite import PositivityFailure
from dahagauss.verlinde import VerlindeAlgebra, deformed_verlinde, omega_sufficient


@pytest.mark.parametrize("N", [None, 5, 7])
def test_s1_formulas(N):
    alg = VerlindeAlgebra(1, N)
    checks = alg.check_s1()
    assert all(checks.values()), [k for k, v in checks.items() if not v]
    if N == 5:
        assert "N=5: (p'_2)^2 = p'_2 + p'_0" in checks


@pytest.mark.parametrize("s", [1, 2, 3])
def test_algebra_structure(s):
    alg = VerlindeAlgebra(s)
    assert alg.dim == s + 1
    assert alg.is_t_plus()
    assert alg.form_agrees_with_module()
    N = alg.structure_constants()
    # p'_0 is the unit
    one = alg.mode.one()
    zero = alg.mode.zero()
    for b in range(alg.dim):
        assert N[0][b] == [one if j == b else zero for j in range(alg.dim)]
        for a in range(alg.dim):
            assert N[a][b] == N[b][a]


def test_positivity():
    alg = VerlindeAlgebra(1)
    assert omega_sufficient(1, Fraction(1, 4))
    assert alg.is_positive(Fraction(1, 4))
    alg.assert_positive(Fraction(2, 5))
    assert not alg.is_positive(Fraction(9, 10))
    with pytest.raises(PositivityFailure):
        alg.assert_positive(Fraction(9, 10))


def test_report():
    rep = deformed_verlinde(1)
    assert rep["dim"] == 2 and rep["positive"] and all(rep["checks"].values())
    with pytest.raises(ValueError):
        VerlindeAlgebra(0)
