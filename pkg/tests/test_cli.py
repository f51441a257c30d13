import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from intasym.cli import digits_for, main
from intasym.expansion import expansion_coefficients
from intasym.registry import registry_names, registry_spec

ZN_APPELL = {"q": 1, "w": 1, "orders": 4, "f": {"kind": "appell", "family": "euler", "d": 3, "b": "1/4", "c": 1}}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def test_coeffs_json_round_trips_at_working_precision(capsys):
    code, out, _ = run(capsys, "coeffs", "--registry", "zn-norm", "--orders", "7")
    assert code == 0
    report = json.loads(out)
    r = expansion_coefficients(registry_spec("zn-norm", orders=7))
    with mpmath.workprec(256):
        for c in report["coefficients"]:
            exact = r.a(c["p"]).value
            assert abs(mpmath.mpf(c["value"]) - exact) <= mpmath.ldexp(abs(exact), -254)
    assert report["coefficients"][0]["zeta_form_pi"] == "1/48*pi^2"
    assert report["a0"]["value"] == "0.75"
    assert report["warnings"] == []


def test_csv_and_json_carry_the_same_numbers(capsys, tmp_path):
    path = write(tmp_path, ZN_APPELL)
    _, js, _ = run(capsys, "coeffs", path)
    _, cs, _ = run(capsys, "coeffs", path, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(cs)))
    coeffs = json.loads(js)["coefficients"]
    assert [int(r["p"]) for r in rows] == [c["p"] for c in coeffs] == [2, 3, 4]
    for row, c in zip(rows, coeffs):
        assert row["value"] == c["value"] and row["error_bound"] == c["error_bound"]
        assert row["zeta_form"] == (c["zeta_form"] or "")


def test_out_file_and_stdin(capsys, tmp_path, monkeypatch):
    target = tmp_path / "out.json"
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(ZN_APPELL)))
    code, out, _ = run(capsys, "coeffs", "-", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["spec"]["f"]["family"] == "euler"


def test_precision_flag_controls_digits(capsys):
    _, out, _ = run(capsys, "--precision-bits", "128", "coeffs", "--registry", "yn-difference", "--orders", "2")
    value = json.loads(out)["coefficients"][0]["value"]
    assert len(value.lstrip("-0.")) <= digits_for(128)
    assert digits_for(256) == 79


def test_published_mismatch_is_reported(capsys):
    code, out, err = run(capsys, "coeffs", "--registry", "sincos", "--orders", "6")
    assert code == 0
    warnings = json.loads(out)["warnings"]
    assert len(warnings) == 4 and "published a_2" in warnings[0]
    assert "published a_2" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--registry", "zn-norm", "--orders", "6")
    assert code == 0
    v = json.loads(out)["verification"]
    assert v["slope_ok"] and abs(v["fitted_slope"] + 7) < 0.5
    assert v["n_grid"] == [16, 32, 64] and len(v["residuals"]) == 3


def test_verify_slope_miss_exits_4(capsys):
    code, out, err = run(capsys, "verify", "--registry", "zn-norm", "--n-grid", "1,2,3")
    assert code == 4
    assert json.loads(out)["verification"]["slope_ok"] is False
    assert "misses -9" in err


def test_verify_exact_expansion_reports_precision_floor(capsys, tmp_path):
    doc = dict(ZN_APPELL, q=0)
    code, out, _ = run(capsys, "verify", write(tmp_path, doc))
    assert code == 0
    report = json.loads(out)
    assert report["verification"]["precision_floor"] is True
    assert any("precision floor" in w for w in report["warnings"])


def test_quadrature_failure_exits_3(capsys, tmp_path):
    doc = dict(ZN_APPELL, q="1/2", orders=3, precision_bits=64, verify={"quadrature_tol": "1/10^200"})
    code, _, err = run(capsys, "verify", write(tmp_path, doc))
    assert code == 3
    assert "numerical failure" in err


@pytest.mark.parametrize("doc,fragment", [
    ("{not json", "invalid JSON"),
    ({"q": 1, "w": 1, "f": {"kind": "appell", "family": "eulr", "d": 3, "b": 1, "c": 1}}, "$.f.family"),
    ({"q": 2, "w": 1, "f": {"kind": "appell", "family": "euler", "d": 3, "b": 1, "c": 1}}, "q must lie"),
    ({"w": 1, "f": {"kind": "appell", "family": "euler", "d": 3, "b": 1, "c": 1}}, "$.q"),
    ({"q": 1, "w": 1, "f": {"kind": "appell", "family": "euler", "d": 3, "b": 1, "c": 1}, "bogus": 1}, "bogus"),
    ({"q": 1, "w": 1, "orders": 6, "f": {"kind": "derivatives", "values_at_1": [1, 2]}}, "needs f^"),
    ({"q": 1, "w": 1, "f": {"kind": "registry", "name": "zz"}}, "$.f.name"),
    ({"q": 1, "w": 1, "f": {"kind": "appell", "family": "euler", "d": 3, "b": 1, "c": 1},
      "verify": {"n_grid": [16]}}, "$.verify.n_grid"),
], ids=["json", "family", "q-range", "missing-q", "extra-key", "short-derivatives", "registry", "grid"])
def test_invalid_input_exits_2(capsys, tmp_path, doc, fragment):
    code, _, err = run(capsys, "coeffs", write(tmp_path, doc))
    assert code == 2
    assert fragment in err


def test_missing_file_and_missing_spec_exit_2(capsys, tmp_path):
    assert run(capsys, "coeffs", str(tmp_path / "absent.json"))[0] == 2
    assert run(capsys, "coeffs")[0] == 2


def test_derivative_only_verify_exits_2(capsys, tmp_path):
    doc = {"q": -1, "w": 1, "orders": 3, "f": {"kind": "derivatives", "values_at_1": [1, -1, 2]}}
    code, _, err = run(capsys, "verify", write(tmp_path, doc))
    assert code == 2 and "evaluator" in err


def test_symmetry_on_and_off_criterion(capsys, tmp_path):
    code, out, _ = run(capsys, "symmetry", "--registry", "zn-norm", "--orders", "8")
    sym = json.loads(out)["symmetry"]
    assert code == 0 and sym["all_hold"] and sym["criterion"]["holds"]
    assert sym["per_p"][1]["rho"][0] == {"nu": 1, "rho": "1/16", "s_ref": "zeta(2,1)"}

    doc = dict(ZN_APPELL, w=2, orders=6)
    code, out, _ = run(capsys, "symmetry", write(tmp_path, doc))
    sym = json.loads(out)["symmetry"]
    assert code == 0 and not sym["all_hold"]
    assert sym["first_violation"] == {"p": 3, "nu": 1}
    assert sym["criterion"]["holds"] is False and sym["criterion"]["omega"] == "3"


def test_symmetry_rejects_other_q(capsys):
    assert run(capsys, "symmetry", "--registry", "yn-difference")[0] == 2


def test_mzv_text_forms(capsys):
    code, out, _ = run(capsys, "mzv", "--m", "1", "--p", "2", "--z", "1")
    assert code == 0 and out.startswith("zeta(2,1) = zeta(3) = 1.2020569031595942853997")
    _, out, _ = run(capsys, "mzv", "--m", "2", "--p", "1", "--z", "-1")
    assert out.startswith("S_(2,1)(-1) = (2^-2 - 1)*zeta(3) = -0.9015426773696957")
    _, out, _ = run(capsys, "mzv", "--m", "1", "--p", "1", "--z", "1/2")
    assert out.startswith("S_(1,1)(1/2) = 0.5822405264650125")


def test_mzv_json_and_domain(capsys):
    code, out, _ = run(capsys, "mzv", "--m", "2", "--p", "2", "--z", "1", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["zeta_form"] == "-1/2*zeta(2)^2 + 3/2*zeta(4)"
    assert report["identification"] == "s_(2,2) = zeta(3,1)"
    assert run(capsys, "mzv", "--m", "1", "--p", "1", "--z", "2")[0] == 2
    assert run(capsys, "mzv", "--m", "1", "--p", "1", "--z", "abc")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "intasym", "mzv", "--m", "1", "--p", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("zeta(2) = zeta(2) = 1.644934")


@pytest.mark.slow
@pytest.mark.parametrize("name", registry_names())
def test_every_registry_entry_verifies(capsys, name):
    code, out, _ = run(capsys, "verify", "--registry", name)
    assert code == 0, out
    assert json.loads(out)["verification"]["slope_ok"]


def test_hermite_symmetry_criterion(capsys):
    code, out, _ = run(capsys, "symmetry", "--registry", "hermite-lognormal", "--orders", "6")
    sym = json.loads(out)["symmetry"]
    assert code == 0 and sym["criterion"]["holds"] and sym["all_hold"]
    assert all(entry["rho"] for entry in sym["per_p"])


def test_mzv_at_zero(capsys):
    code, out, _ = run(capsys, "mzv", "--m", "1", "--p", "1", "--z", "0")
    assert code == 0 and out.strip() == "S_(1,1)(0) = 0"


def test_constant_f_at_q_zero_hits_precision_floor(capsys, tmp_path):
    doc = {"q": 0, "w": 1, "orders": 3, "f": {"kind": "appell", "family": "monomial", "b": 1, "c": 1}}
    code, out, _ = run(capsys, "verify", write(tmp_path, doc))
    assert code == 0 and json.loads(out)["verification"]["precision_floor"]


def test_sincos_verify_uses_assembled_values(capsys):
    code, out, err = run(capsys, "verify", "--registry", "sincos", "--orders", "4")
    report = json.loads(out)
    assert code == 0 and abs(report["verification"]["fitted_slope"] + 5) < 0.5
    assert any("published a_2" in w for w in report["warnings"]) and "published a_4" in err
