import json
import subprocess
import sys
from fractions import Fraction as Fr

import pytest

from biquad.cli import EXIT_FAIL, EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, main, run
from biquad.forms import Biquadratic
from biquad.io import biquadratic_document, write_json


@pytest.fixture
def norm_file(tmp_path):
    p = tmp_path / "norm.json"
    write_json(biquadratic_document(Biquadratic.norm_product(3, 3)), p)
    return p


def test_family_verify(tmp_path, capsys):
    out = tmp_path / "fam.json"
    report, code = run(["family", "1/2", "3/4", "--verify-paper-matrix", "--output", str(out)])
    assert code == EXIT_OK
    assert report.verdicts["matrix_match"] is True and report.verdicts["nullspace_dim"] == 1
    assert json.loads(out.read_text())["n"] == 3


def test_family_invalid_and_other_member():
    report, code = run(["family", "1/2", "3/2"])
    assert code == EXIT_PARSE and report.verdicts["valid_parameters"] is False
    report, code = run(["family", "2/5", "1/2"])
    assert code == EXIT_OK and report.verdicts["valid_parameters"] is True


def test_analyze_family(tmp_path):
    report, _ = run(["family", "1/2", "3/4", "-o", str(tmp_path / "f.json")])
    report, code = run(["analyze", str(tmp_path / "f.json"), "--json"])
    assert code == EXIT_OK
    assert report.verdicts["dim_LF"] == 9
    assert report.verdicts["weak"]["status"] == "weak_extremal"
    assert report.verdicts["strong"]["status"] == "strong_extremal"
    assert report.grades["weak"] == "exact"


def test_analyze_norm_product(norm_file):
    report, code = run(["analyze", str(norm_file)])
    assert code == EXIT_OK and report.verdicts["weak"]["status"] == "not_weak_extremal"


def test_analyze_negative_form(tmp_path, capsys):
    doc = {"n": 3, "m": 3, "coefficients": [{"i": 0, "j": 0, "k": 0, "l": 0, "value": "-1"}]}
    p = tmp_path / "neg.json"
    p.write_text(json.dumps(doc))
    report, code = run(["analyze", str(p)])
    assert code == EXIT_NEGATIVE
    assert "negative_witness" in report.verdicts


def test_parse_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[")
    assert main(["analyze", str(p)]) == EXIT_PARSE
    assert main(["analyze", str(tmp_path / "missing.json")]) == EXIT_PARSE
    with pytest.raises(SystemExit) as info:
        main(["family"])
    assert info.value.code == 2


def test_counterexample_passes():
    report, code = run(["counterexample", "--json"])
    assert code == EXIT_OK and report.verdicts["reproduction"] == "PASS"
    assert report.tolerances["sextic_grid_density"] >= 10**5
    assert report.verdicts["sextic"]["status"] == "not_extremal"


def test_counterexample_coarse_grid_degrades():
    report, code = run(["counterexample", "--grid", "100"])
    assert report.verdicts["reproduction"] == "INCONCLUSIVE"
    assert report.verdicts["sextic"]["status"] == "inconclusive"


def test_counterexample_perturbed_fails():
    report, code = run(["counterexample", "--perturb", "0"])
    assert code == EXIT_FAIL and report.verdicts["reproduction"] == "FAIL"
    failed = [s for s in report.verdicts["stages"] if not s["ok"]]
    assert failed and failed[0]["stage"] in ("nonnegativity", "nine zeros")


def test_sextic_command(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps([{"a": 2, "b": 0, "c": 4, "value": "1"}, {"a": 0, "b": 6, "c": 0, "value": "1"}]))
    report, code = run(["sextic", str(p)])
    assert code == EXIT_OK
    a5 = [s for s in report.verdicts["singularities"] if s["type"] == "A5"]
    assert len(a5) == 1 and a5[0]["point"] == ["0", "0", "1"]
    assert report.verdicts["delta_sum"] == 3
    # the second zero (1:0:0) has a vanishing Hessian, so the sextic is a sum of squares
    assert report.verdicts["extremality"]["status"] == "not_extremal"


def test_bounds_command(tmp_path):
    p = tmp_path / "b.json"
    p.write_text(json.dumps({"n": 1, "C1": [["1"]], "C2": [["2"]], "theta1": "1/2", "theta2": "1/2",
                             "translation": {"matrix": [["0"]]}}))
    report, code = run(["bounds", str(p)])
    assert code == EXIT_OK
    assert report.verdicts["HM"] == [["4/3"]] == report.verdicts["TB"]
    eye = [[str(int(i == j)) for j in range(9)] for i in range(9)]
    two = [[str(2 * int(i == j)) for j in range(9)] for i in range(9)]
    p.write_text(json.dumps({"n": 3, "C1": eye, "C2": two, "theta1": "1/2",
                             "translation": {"minors": ["1/10"] + ["0"] * 8}}))
    report, code = run(["bounds", str(p)])
    assert code == EXIT_OK and "TB" in report.verdicts
    assert report.grades["translation_quasiconvex"] == "exact" and report.grades["TB"] == "exact"


def test_reports_are_deterministic(tmp_path):
    a, _ = run(["counterexample", "--grid", "2000", "--json"])
    b, _ = run(["counterexample", "--grid", "2000", "--json"])
    assert a.verdicts == b.verdicts


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "biquad", "family", "1/2", "3/4", "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["verdicts"]["nullspace_dim"] == 1
