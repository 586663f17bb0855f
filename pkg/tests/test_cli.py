import json
import subprocess
import sys

import pytest

from dahagauss.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_examples(capsys):
    assert run(capsys, "poly", "rogers", "1")[1].strip() == "X + X^-1"
    assert run(capsys, "poly", "e", "0")[1].strip() == "1"
    code, out, _ = run(capsys, "poly", "epsilon", "2")
    assert code == 0
    assert out.strip() == "((q*t^2 - t)/(q*t^2 - 1))*X^2 + (q*t^2 - q*t)/(q*t^2 - 1)"


def test_poly_descending_order(capsys):
    out = run(capsys, "poly", "epsilon", "-2", "--format", "json")[1]
    doc = json.loads(out)
    exps = [m for m, _ in doc["terms"]]
    assert exps == sorted(exps, reverse=True) == [2, 0, -2]
    assert run(capsys, "poly", "rogers", "2", "--k", "1")[1].strip() == "X^2 + 1 + X^-2"


@pytest.mark.parametrize("k", ["-0.5", "0.5", "1/3", "x"])
def test_k_rejects_non_halves(capsys, k):
    assert run(capsys, "poly", "e", "1", "--k", k)[0] == 2


def test_k_accepts_negative_halves(capsys):
    code, out, _ = run(capsys, "verify", "eta-like", "--s", "2", "--k", "-5/2")
    assert code == 0 and "k=-5/2" in out


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "ct-gauss-mu", "--k", "2", "--order", "40")
    assert code == 0 and out.startswith("verified")
    code, out, _ = run(capsys, "verify", "gauss-classical", "--N", "4")
    assert code == 0
    assert "S = (1+i)*(2)" in out and "S^2 = 8i" in out
    assert run(capsys, "verify", "unknown-id")[0] == 2


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "main-root-even-printed", "--N", "3", "--k", "1", "--m", "1", "--n", "1")[0] == 1
    assert run(capsys, "verify", "jackson-gauss", "--k", "1", "--perturb")[0] == 1
    assert run(capsys, "verify", "gauss-selberg", "--N", "5", "--k", "3")[0] == 2
    code, out, _ = run(capsys, "verify", "gen-gauss", "--N", "6", "--k", "2")
    assert code == 0 and out.startswith("zero-case")


def test_text_and_json_agree(capsys):
    args = ("verify", "main-root-prime", "--N", "7", "--k", "2", "--sign-half", "-", "--no-timing")
    text = run(capsys, *args)[1]
    doc = json.loads(run(capsys, *args, "--format", "json")[1])
    assert text.split()[0] == doc["outcome"]
    assert doc["params"]["sign"] == -1
    assert [line.strip().startswith("[ok]") for line in text.splitlines()[1:]] == [c["ok"] for c in doc["checks"]]


def test_json_is_deterministic(capsys, tmp_path):
    args = ("verify", "verlinde", "--no-timing", "--format", "json", "--out", str(tmp_path / "a.json"))
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second
    assert json.loads((tmp_path / "a.json").read_text()) == json.loads(first)


def test_module_examples(capsys):
    code, out, _ = run(capsys, "module", "--N", "8", "--k", "1", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 12 and rep["irreducible"] and rep["fourier"]["F_bullet F_circ = id"]
    code, out, _ = run(capsys, "module", "--N", "5", "--k", "1", "--variant", "prime-special")
    assert code == 0 and "2 components of dims 3, 3" in out
    assert run(capsys, "module", "--N", "5", "--k", "3")[0] == 2
    code, out, _ = run(capsys, "module", "--N", "7", "--k", "-3/2", "--variant", "bar_rearranged")
    assert code == 0 and "dim 3" in out


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "module", "--N", "5")[0] == 2
    assert run(capsys, "verify", "gauss-classical", "--sign-half", "x")[0] == 2


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "gauss-classical" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dahagauss", "poly", "rogers", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "X + X^-1"
