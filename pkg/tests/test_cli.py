import json
import subprocess
import sys

import pytest

from qpath.cli import main, parse_table_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_all_methods(capsys):
    code, out, _ = run(capsys, "table", "--family", "tangent", "--max-n", "4", "--method", "all")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["euler_number"] for r in rows] == ["1", "2", "16", "272", "7936"]
    assert all(r["agree"] for r in rows)


def test_table_secant(capsys):
    code, out, _ = run(capsys, "table", "--family", "secant", "--max-n", "2")
    assert code == 0
    assert json.loads(out)["rows"][-1]["poly"] == ["2", "2", "1"]


def test_table_bad_range(capsys):
    code, _, err = run(capsys, "table", "--max-n", "-1")
    assert code == 1 and "error" in err


def test_csv_and_json_agree(capsys):
    _, js, _ = run(capsys, "table", "--family", "secant", "--max-n", "6", "--method", "all")
    _, cs, _ = run(capsys, "table", "--family", "secant", "--max-n", "6", "--method", "all", "--format", "csv")
    assert cs.splitlines()[0] == "family,N,euler_number,poly,agree"
    assert parse_table_csv(cs) == json.loads(js)["rows"]


def test_output_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    assert main(["table", "--max-n", "3", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["rows"][3]["euler_number"] == "272"


def test_coeff_examples(capsys):
    code, out, _ = run(capsys, "coeff", "--family", "tangent", "--n", "2", "--width", "1")
    assert code == 0 and json.loads(out)["poly"] == ["1", "2", "1"]
    _, out, _ = run(capsys, "coeff", "--family", "secant", "--n", "5", "--width", "1")
    assert json.loads(out)["poly"] == ["1"]
    _, out, _ = run(capsys, "coeff", "--n", "2", "--width", "0")
    assert json.loads(out)["poly"] == ["0"]


@pytest.mark.parametrize("width", ["0", "2", "inf"])
def test_coeff_all_methods(capsys, width):
    code, out, _ = run(capsys, "coeff", "--family", "secant", "--n", "4", "--width", width, "--method", "all")
    doc = json.loads(out)
    assert code == 0 and doc["agree"]
    expected = {"cf", "dp", "brute"} | ({"closed"} if width == "inf" else set())
    assert set(doc["methods"]) == expected


def test_coeff_closed_needs_unbounded_width(capsys):
    code, _, _ = run(capsys, "coeff", "--n", "4", "--width", "2", "--method", "closed")
    assert code == 1


def test_coeff_brute_guard(capsys):
    code, _, err = run(capsys, "coeff", "--n", "40", "--method", "brute")
    assert code == 1 and "N <=" in err


def test_bad_width(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["coeff", "--n", "2", "--width", "wide"])
    assert exc.value.code == 1


def test_enumerate_counts(capsys):
    assert run(capsys, "enumerate", "--n", "1", "--family", "tangent", "--count")[1] == "2\n"
    assert run(capsys, "enumerate", "--n", "1", "--family", "secant", "--count")[1] == "1\n"
    assert run(capsys, "enumerate", "--n", "0", "--count")[1] == "1\n"
    assert run(capsys, "enumerate", "--n", "3", "--family", "secant", "--count")[1] == "61\n"


def test_enumerate_listing(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--family", "tangent")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 16 == len(doc["diagrams"])
    areas = sorted(d["area"] for d in doc["diagrams"])
    assert areas == sorted(k for k, c in enumerate([2, 5, 5, 3, 1]) for _ in range(c))


def test_enumerate_guards(capsys):
    assert run(capsys, "enumerate", "--n", "11", "--count")[0] == 1
    assert run(capsys, "enumerate", "--n", "7")[0] == 1


def test_verify_rectangle_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma5", "--tol", "1e-10")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["reports"][0]["name"] == "rectangle"


def test_verify_complex_root_region(capsys):
    code, _, err = run(capsys, "verify", "--grid", "t=0.4..0.5,q=0.1")
    assert code == 1 and "(1-q)^2" in err


def test_verify_failure_exit_code(capsys):
    # rounding alone exceeds this tolerance, so the identity must be reported as failed
    code, out, _ = run(capsys, "verify", "--suite", "lemma5", "--tol", "1e-300")
    doc = json.loads(out)
    assert code == 2 and not doc["pass"] and doc["reports"][0]["max_abs_err"] > 1e-300


def test_verify_custom_grid(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theorems", "--grid", "t=0.02..0.06:3,q=0.2;0.6")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["reports"][0]["grid"]) == 3 * 2 * 8


def test_max_terms_env(monkeypatch, capsys):
    monkeypatch.setenv("QPATH_MAX_TERMS", "2")
    code, _, err = run(capsys, "verify", "--suite", "w1", "--grid", "t=0.05,q=0.5")
    assert code == 2 and "terms" in err


def test_deterministic_and_module_entry():
    argv = [sys.executable, "-m", "qpath", "table", "--family", "tangent", "--max-n", "6", "--method", "all"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.decode("utf-8").startswith("{")
