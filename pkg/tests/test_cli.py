import json
import subprocess
import sys

import pytest

from fermat3.cli import EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_relation(capsys):
    code, rep = run_json(capsys, "relation", "--n", "3")
    assert code == EXIT_OK and rep["ok"] and rep["sum"] == 24


def test_pd_both_methods(capsys):
    code, rep = run_json(capsys, "pd", "--d", "23", "--method", "both")
    assert code == EXIT_OK
    assert "x^6 + 11*x^5" in json.dumps(rep)


def test_qk(capsys):
    code, rep = run_json(capsys, "qk", "--d", "59")
    assert code == EXIT_OK
    assert rep["point"]["x"] == {"a": "-2", "b": "0"}


def test_criteria(capsys):
    code, rep = run_json(capsys, "criteria", "--d", "23")
    assert code == EXIT_OK and rep["verdict"].startswith("nontrivial")


def test_formal(capsys):
    code, rep = run_json(capsys, "formal", "--order", "12")
    assert code == EXIT_OK and rep["ok"]
    assert rep["w_coeffs"] == ["1", "9", "135", "2430"]


def test_ell_rank(capsys):
    code, rep = run_json(capsys, "ell-rank", "--d", "23")
    assert code == EXIT_OK and rep["ell"] == 3


def test_demo(capsys):
    code, rep = run_json(capsys, "demo-2132", "--no-validate")
    assert code == EXIT_OK and rep["sum"] == [13, 462]


def test_audit(capsys):
    code, rep = run_json(capsys, "audit-cor2", "--n", "2")
    assert code == EXIT_OK and rep["ok"]


def test_text_output(capsys):
    code, out, _ = run(capsys, "classpoly", "--d", "23")
    assert code == EXIT_OK and "3491750" in out


@pytest.mark.parametrize("argv", [
    ["pd"],
    ["pd", "--d", "7"],
    ["resultant", "--n", "9"],
    ["relation", "--n", "3", "--padic-prec", "4"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_bad_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("FERMAT3_SEED", "abc")
    code, _, err = run(capsys, "relation", "--n", "1")
    assert code == EXIT_USAGE and "FERMAT3_SEED" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fermat3", "relation", "--n", "2", "--json"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == EXIT_OK
    assert json.loads(r.stdout)["sum"] == 6


def test_verify_subset_deterministic(capsys):
    a = run(capsys, "verify-all", "--only", "1", "4", "10", "--json")
    b = run(capsys, "verify-all", "--only", "1", "4", "10", "--json")
    assert a[0] == EXIT_OK and a[1] == b[1]
