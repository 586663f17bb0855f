from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.finite import (
    NotDecomposable,
    SectorError,
    build_generic_module,
    build_module,
    correspondence_isomorphic,
    expected_dimension,
    label_of,
    module_report,
    sharp_value,
    spectral_set,
)

H = Fraction(1, 2)


@st.composite
def main_sector(draw):
    N = draw(st.integers(3, 12))
    k = draw(st.integers(1, (N - 1) // 2))
    return N, k


@given(main_sector())
def test_full_module_dimension_and_t_eigenspaces(Nk):
    N, k = Nk
    m = build_module(N, k, "prime")
    assert m.dim == 2 * (N - 2 * k) == len(spectral_set(N, k))
    assert m.t_eigenspace_dims() == (N - 2 * k + 1, N - 2 * k - 1)


@given(main_sector())
def test_even_module_dimension(Nk):
    N, k = Nk
    assert build_module(N, k, "even").dim == N - 2 * k


@given(st.integers(2, 12), st.integers(0, 5))
def test_bar_sets(N, s):
    k = -H - s
    if not -Fraction(N, 2) < k:
        with pytest.raises(SectorError):
            spectral_set(N, k, "bar_prime")
        return
    assert len(spectral_set(N, k, "bar_prime")) == 2 * s + 1
    # N/2 < k' < N is read as k' - N
    assert expected_dimension(N, k + N, "bar_prime") == 2 * N - 2 * (k + N)


@given(st.integers(-6, 6), st.sampled_from([Fraction(1), Fraction(2), Fraction(3, 2)]))
def test_labels_invert_sharp(n, k):
    assert label_of(sharp_value(n, k), k) == n


@pytest.mark.parametrize("N,k", [(5, 3), (4, 2), (6, 0), (5, Fraction(1, 3))])
def test_sector_violations(N, k):
    with pytest.raises(SectorError):
        build_module(N, k)


@pytest.mark.parametrize("N,k,variant", [(7, 1, "prime"), (8, 2, "prime"), (9, 2, "even"), (7, Fraction(3, 2), "prime"),
                                         (7, -Fraction(3, 2), "prime"), (8, -Fraction(5, 2), "even")])
def test_irreducible_modules(N, k, variant):
    m = build_module(N, k, variant)
    assert not m.is_special()
    cert = m.irreducibility_certificate()
    assert cert["irreducible"] and cert["simple_spectrum"] and cert["constant_cyclic"]
    with pytest.raises(NotDecomposable):
        m.decompose()
    assert m.is_unitary() and m.weights_positive()
    assert m.intertwines()
    assert all(m.fourier_checks().values())


@pytest.mark.parametrize("N,k,variant,dims", [(5, 1, "prime-special", [3, 3]), (7, 2, "prime-special", [3, 3]),
                                              (8, 1, "even", [3, 3]), (7, Fraction(3, 2), "even", [2, 2])])
def test_decomposing_modules(N, k, variant, dims):
    m = build_module(N, k, variant)
    comps = m.decompose()
    assert [len(c) for c in comps] == dims
    assert not m.is_irreducible()
    assert all(m.fourier_checks().values())


def test_generic_module_relations():
    m = build_generic_module(-Fraction(5, 2), "even")
    assert all(m.relations().values())
    assert m.dim == 5


def test_module_report():
    rep = module_report(8, 1)
    assert rep["dim"] == 12 and rep["irreducible"] and not rep["failures"]
    rep = module_report(5, 1, "prime-special")
    assert rep["components"] == [3, 3] and not rep["failures"]
    with pytest.raises(SectorError):
        module_report(5, 3)


@pytest.mark.parametrize("N,s", [(5, 0), (5, 1), (7, 2)])
def test_correspondence(N, s):
    assert correspondence_isomorphic(N, s)["isomorphic"]
