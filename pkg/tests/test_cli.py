import json
import os
import subprocess
import sys

import pytest

from selberglab.catalog import load_entry, serialize
from selberglab.cli import main, parse_grid


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else {}, out


def test_classify_delta(capsys):
    code, doc, _ = invoke(capsys, "classify", "ramanujan_normalized", "--canonical")
    assert code == 0
    assert doc["result"]["classification"]["verdict"] == "HoloCuspForm" and doc["result"]["classification"]["k"] == "12"
    assert doc["status"] == "pass" and doc["failures"] == []
    assert "timestamp" not in doc


def test_classify_odd_weight_fails(capsys):
    code, doc, _ = invoke(capsys, "classify", "hecke(2)", "--canonical")
    assert code == 1
    assert doc["status"] == "fail"
    assert any("k_even_at_least_12" in f for f in doc["failures"])


def test_verify_quadratic_example(capsys):
    code, doc, _ = invoke(capsys, "verify-quadratic", "--N", "3", "hecke(3/2)", "--canonical")
    assert code == 0
    assert [c["name"] for c in doc["checks"]] == ["Q_3"]
    assert doc["checks"][0]["detail"]["residual"] == "0"


def test_invariants_zeta(capsys):
    code, doc, _ = invoke(capsys, "invariants", "zeta_squared", "--validate", "--canonical")
    assert code == 0
    assert doc["result"]["invariants"]["chi"] == "0" and doc["result"]["invariants"]["d"] == "2"


def test_invariants_float_mode_env(capsys, monkeypatch):
    monkeypatch.setenv("SELBERGLAB_MODE", "float")
    code, doc, _ = invoke(capsys, "invariants", "ramanujan_normalized", "--canonical")
    assert code == 0 and doc["mode"] == "float"
    assert doc["result"]["invariants"]["chi"] == {"re": 60.5, "im": 0.0}


def test_bad_env_mode(capsys, monkeypatch):
    monkeypatch.setenv("SELBERGLAB_MODE", "fuzzy")
    code, doc, _ = invoke(capsys, "invariants", "zeta_squared", "--canonical")
    assert code == 2


def test_exact_mode_rejects_float_input(capsys):
    code, doc, _ = invoke(capsys, "invariants", "hecke(2.5)", "--mode", "exact", "--canonical")
    assert code == 2


def test_lambda_zero_document(capsys, tmp_path):
    doc = json.loads(serialize(load_entry("zeta_squared").data))
    doc["factors"][0]["lambda"] = "0"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out, _ = invoke(capsys, "invariants", str(p), "--canonical")
    assert code == 2
    assert out["error"]["type"] == "SchemaError"
    assert out["error"]["path"] == "$.factors[0].lambda"


def test_json_document_input(capsys, tmp_path):
    p = tmp_path / "delta.json"
    p.write_text(serialize(load_entry("ramanujan_normalized", 50).data))
    code, doc, _ = invoke(capsys, "classify", str(p), "--canonical")
    assert code == 0 and doc["result"]["classification"]["verdict"] == "HoloCuspForm"


@pytest.mark.parametrize("argv", [["classify", "nonsense"], ["classify", "missing.json"], ["bogus-command"], ["sweep", "--family", "hecke", "--grid", "1:x"], []])
def test_input_errors(capsys, argv):
    code = main(argv)
    capsys.readouterr()
    assert code == 2


def test_structural_command(capsys):
    code, doc, _ = invoke(capsys, "structural", "hecke(11/2)", "--lmax", "5", "--oracle-lmax", "2", "--canonical")
    assert code == 0
    names = [c["name"] for c in doc["checks"]]
    assert any("recursion" in n for n in names) and any("oracle" in n for n in names)


def test_verify_identity_command(capsys):
    code, doc, _ = invoke(capsys, "verify-identity", "maass(1,3/2)", "--points", "20", "--canonical")
    assert code == 0
    assert doc["tolerances"]["reflection_tol"] == 1e-10


def test_period_check_command(capsys):
    code, doc, _ = invoke(capsys, "period-check", "ramanujan_normalized", "--grid-n", "3", "--canonical")
    assert code == 0
    code, doc, _ = invoke(capsys, "period-check", "zeta_squared", "--grid-n", "3", "--canonical")
    assert code == 0
    assert not any("modular" in c["name"] for c in doc["checks"])


def test_sweep_sorted_and_parallel_deterministic(capsys):
    _, _, a = invoke(capsys, "sweep", "--family", "maass", "--grid", "0:1:1/2", "--canonical")
    _, _, b = invoke(capsys, "sweep", "--family", "maass", "--grid", "0:1:1/2", "--jobs", "4", "--canonical")
    assert a == b
    rows = json.loads(a)["result"]["rows"]
    assert [r["name"] for r in rows] == sorted(r["name"] for r in rows)


def test_parse_grid():
    from fractions import Fraction

    assert parse_grid("1/2:2:1/2") == [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
    assert parse_grid("1,5/2") == [Fraction(1), Fraction(5, 2)]
    with pytest.raises(ValueError):
        parse_grid("1:0:1")


def test_output_file(capsys, tmp_path):
    p = tmp_path / "r.json"
    code = main(["classify", "zeta_squared", "--canonical", "-o", str(p)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(p.read_text())["result"]["classification"]["verdict"] == "ZetaSquared"


def test_timestamp_only_difference(capsys):
    _, d1, _ = invoke(capsys, "classify", "zeta_squared")
    _, d2, _ = invoke(capsys, "classify", "zeta_squared")
    assert "timestamp" in d1
    d1.pop("timestamp"), d2.pop("timestamp")
    assert d1 == d2


def test_canonical_byte_identical_subprocess():
    cmd = [sys.executable, "-m", "selberglab.cli", "classify", "maass(0,2)", "--canonical"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_console_script_exit_code():
    r = subprocess.run([sys.executable, "-m", "selberglab.cli", "classify", "hecke(2)", "--canonical"], capture_output=True)
    assert r.returncode == 1
    r = subprocess.run([sys.executable, "-m", "selberglab.cli", "classify", "nope", "--canonical"], capture_output=True)
    assert r.returncode == 2
