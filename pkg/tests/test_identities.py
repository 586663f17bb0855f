import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahagauss.identities import (
    OUTCOMES,
    REGISTRY,
    Check,
    psi_enclosure_width,
    run_suite,
    suite_cases,
    summarize,
    verify,
)

PRINTED = {"main-root-even-printed", "main-root-halfint-even-printed"}
GENERIC_CASES = suite_cases("generic", order=20)
ROOT_CASES = suite_cases("roots", Nmax=8)
HALFINT_CASES = suite_cases("halfint", Nmax=8, order=20)


@pytest.mark.parametrize("id", sorted(set(REGISTRY) - PRINTED))
def test_every_identity_verifies_at_defaults(id):
    report = verify(id)
    assert report.outcome == "verified", report.witness


@pytest.mark.parametrize("id", sorted(PRINTED))
def test_printed_constants_fail(id):
    report = verify(id)
    assert report.outcome == "mismatch"
    assert report.witness["lhs"] != report.witness["rhs"]


def test_printed_even_constant_witness():
    report = verify("main-root-even-printed", {"N": 3, "k": 1, "m": 1, "n": 1})
    assert report.outcome == "mismatch"
    assert verify("main-root-even", {"N": 3, "k": 1, "m": 1, "n": 1}).outcome == "verified"


@given(st.sampled_from(GENERIC_CASES + ROOT_CASES + HALFINT_CASES))
def test_perturbing_a_right_hand_side_is_detected(case):
    id, params = case
    assert verify(id, params, perturb=True).outcome == "mismatch"


@given(st.sampled_from(ROOT_CASES + HALFINT_CASES))
def test_suite_cases_hold(case):
    id, params = case
    assert verify(id, params).outcome in ("verified", "zero-case")


@given(st.integers(1, 3), st.integers(10, 40))
def test_truncation_order_does_not_change_the_outcome(k, D):
    assert verify("ct-gauss-mu", {"k": k, "order": D}).outcome == "verified"
    assert verify("jackson-gauss", {"k": k, "order": D}).outcome == "verified"


def test_zero_case_predictions():
    # N = 2M with M - k odd
    assert verify("gen-gauss", {"N": 6, "k": 2}).outcome == "zero-case"
    assert verify("gen-gauss", {"N": 6, "k": 1}).outcome == "verified"
    assert verify("gen-gauss-simplified", {"N": 6, "k": 2}).outcome == "sector-violation"
    # integral k, q^(1/2) = -exp(pi i/N), N = 1 mod 4
    assert verify("gauss-constant-prime", {"N": 5, "k": 1, "sign": -1}).outcome == "zero-case"
    assert verify("gauss-constant-prime", {"N": 7, "k": 1, "sign": -1}).outcome == "verified"


def test_outcomes_and_errors():
    assert verify("gauss-selberg", {"N": 5, "k": 3}).outcome == "sector-violation"
    with pytest.raises(KeyError):
        verify("no-such-identity")
    assert set(OUTCOMES) == {"verified", "zero-case", "mismatch", "sector-violation", "degenerate"}


def test_check_kinds():
    assert Check("exact", Fraction(1, 2), Fraction(2, 4)).holds()
    assert not Check("exact", 1, 2).holds()
    assert not Check("exact", 1, 1).perturbed().holds()


def test_json_round_trip_and_determinism():
    a = verify("main-root-prime", {"N": 7, "k": 2}).to_json(timing=False)
    b = verify("main-root-prime", {"N": 7, "k": 2}).to_json(timing=False)
    text = json.dumps(a, sort_keys=True)
    assert json.loads(text) == a
    assert text == json.dumps(b, sort_keys=True)
    assert "millis" not in a and "millis" in verify("gauss-product").to_json()


def test_suite_summary():
    reports = run_suite("verlinde")
    summary = summarize("verlinde", reports, timing=False)
    assert summary["total"] == len(reports) and summary["mismatch"] == 0
    assert json.loads(json.dumps(summary)) == summary


@pytest.mark.parametrize("k", [Fraction(3, 10), Fraction(13, 10)])
def test_psi_enclosure_shrinks(k):
    w30 = psi_enclosure_width(k, Fraction(1, 2), 30)
    w60 = psi_enclosure_width(k, Fraction(1, 2), 60)
    assert w60 < w30 < 1e-25
