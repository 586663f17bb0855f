import random

from hypothesis import given
from hypothesis import strategies as st

from dahagauss.daha import (
    TOKENS,
    automorphisms_preserve_relations,
    even_subalgebra_check,
    faithfulness_check,
    generator,
    normal_form,
    pair_t,
    pbw_mul,
    phi,
    phi_reverses_products,
    relations_hold,
    sigma,
    sigma_inv,
    tau_minus,
    tau_minus_inv,
    tau_plus,
)
from dahagauss.polyrep import Mode

FORMAL = Mode.formal()
words = st.text(alphabet="".join(TOKENS), max_size=6)


@given(words)
def test_normal_form_is_faithful(word):
    assert faithfulness_check(word, window=6)


@given(words, words)
def test_normal_form_is_multiplicative(a, b):
    assert pbw_mul(normal_form(a), normal_form(b)) == normal_form(a + b)


@given(words, words)
def test_pairing_is_symmetric(a, b):
    A, B = normal_form(a), normal_form(b)
    assert pair_t(A, B) == pair_t(B, A)


@given(words, words)
def test_phi_is_an_anti_involution(a, b):
    A, B = normal_form(a), normal_form(b)
    assert phi(phi(A)) == A
    assert phi_reverses_products(A, B)


@given(words)
def test_sigma_inverse(word):
    A = normal_form(word)
    assert sigma_inv(sigma(A)) == A
    assert tau_minus_inv(tau_minus(A)) == A


def test_relations():
    assert all(relations_hold(FORMAL).values())
    assert all(relations_hold(Mode.at_k(2)).values())


def test_automorphisms_preserve_relations():
    result = automorphisms_preserve_relations()
    assert result and all(result.values()), [k for k, v in result.items() if not v]


def test_tau_plus_on_generators():
    Y = generator("Y", FORMAL)
    assert tau_plus(Y) == normal_form("XY").scale(FORMAL.u_pow(-1))
    assert tau_plus(generator("T", FORMAL)) == generator("T", FORMAL)


def test_even_subalgebra():
    assert even_subalgebra_check(5)


def test_random_words_seeded():
    rng = random.Random(7)
    from dahagauss.daha import random_word
    assert all(faithfulness_check(random_word(rng, 8), window=8) for _ in range(25))


def test_sigma_squared_is_conjugation_by_t():
    # no central factor appears: sigma^2(H) = T^-1 H T
    for g in "XYT":
        A = generator(g, FORMAL)
        assert sigma(sigma(A)) == normal_form("t" + g + "T")
