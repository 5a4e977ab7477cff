import json
import subprocess
import sys

import pytest

from addax import algebra as alg
from addax.cli import main, run


def ok(argv):
    doc, code = run(argv)
    assert code == 0, doc
    assert doc["schema"] == "addax/1"
    return doc


def test_equation_worked_example():
    doc = ok(["hpair-equation", "Q[x]/(x^3)", "--U", "x"])
    assert doc["degree"] == 2
    assert doc["equation"] == "z0*z2 - 1/2*z1^2"


def test_grouped_command_spelling():
    assert ok(["hpair", "equation", "Q[x]/(x^3)", "--U", "x"])["command"] == "hpair-equation"


def test_classify_certificate():
    doc = ok(["hpair-classify", "Q[x]/(x^6)", "--U", "x, x^2, x^4, x^5"])
    assert doc["finite_orbits"] is False
    assert doc["certificate"] == "canonical index 3, requires i ∈ {4,5}"


def test_algebra_info():
    doc = ok(["algebra-info", "Q[x,y]/(x*y, x^3, y^2 - x^2)", "--order", "grlex-rev"])
    assert doc["hilbert_samuel"] == [1, 2, 1]
    assert doc["staircase"] == ["1", "x", "y", "x^2"]
    assert doc["classification"] == "TwoVariable"


def test_remaining_hpair_commands():
    assert ok(["hpair-degree", "Q[x]/(x^5)", "--U", "x, x^2, x^4"])["degree"] == 3
    assert ok(["hpair-normality", "Q[x]/(x^3)", "--U", "x"])["normal"] is True
    assert ok(["hpair-smooth", "Q[x,y]/(x^2,y^2)", "--U", "x, y"])["smooth"] is True
    dual = ok(["hpair-dual", "Q[x]/(x^5)", "--U", "x, x^2, x^4"])
    assert dual["equal_up_to_scalar"] and dual["dual_finite_orbits"] is False
    red = ok(["hpair-reduce", "Q[x]/(x^5)", "--U", "x, x^2, x^4"])
    assert red["kernel_dim"] == 1 and red["equation"] == "z0^2*z3 - z0*z1*z2 + 1/3*z1^3"


def test_orbit_commands():
    rep = ok(["orbits-report", "Q[x]/(x^5)", "--U", "x, x^3, x^4"])
    assert [o["kind"] for o in rep["orbits"]] == ["open", "infinite-fiber", "coincides", "coincides"]
    pos = ok(["orbits-poset", "Q[x,y]/(x^2,y^2)", "--U", "x, y"])
    assert len(pos["orbits"]) == 4
    op = ok(["orbits-op-check", "Q[x]/(x^3)", "--U", "x"])
    assert op["verdict"] == "holds (witnessed)"


def test_structure_constant_json_input(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(alg.chain_algebra(3).to_json()))
    a = ok(["hpair-equation", str(path), "--U", "x, x^2"])
    b = ok(["hpair-equation", str(path), "--U", "[0,1,0,0]; [0,0,1,0]"])
    assert a["equation"] == b["equation"] == "z0^2*z3 - z0*z1*z2 + 1/3*z1^3"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["hpair-equation", "Q[x]/(x^3", "--U", "x"], 2),
        (["hpair-equation", "Q[x]/(x^3)"], 2),
        (["nonsense"], 2),
        (["hpair-equation", "/nonexistent/file.json", "--U", "x"], 2),
        (["hpair-equation", "Q[x]/(x^3)", "--U", "x^2"], 1),
        (["algebra-info", "Q[x]/(x^2 - 1)"], 1),
        (["algebra-info", "Q[x,y]/(x^2)"], 1),
        (["orbits-poset", "Q[x]/(x^6)", "--U", "x, x^3, x^4, x^5"], 1),
        (["hpair-dual", "Q[x]/(x^5)", "--U", "x, x^2, x^3"], 1),
    ],
)
def test_exit_codes(argv, code):
    doc, got = run(argv)
    assert got == code
    assert "error" in doc


def test_parse_error_reports_position():
    doc, code = run(["hpair-equation", "Q[x]/(x^3, y)", "--U", "x"])
    assert code == 2 and doc["position"] == 11


def test_invalid_json_algebra(tmp_path):
    bad = tmp_path / "bad.json"
    table = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    bad.write_text(json.dumps({"dim": 2, "basis": ["1", "x"], "table": [[i, j, table[i][j]] for i in range(2) for j in range(2)]}))
    doc, code = run(["algebra-info", str(bad)])
    assert code == 1 and "nilpotent" in doc["message"]


def test_main_prints_json(capsys):
    assert main(["hpair-degree", "Q[x]/(x^3)", "--U", "x", "--pretty"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["degree"] == 2
    assert out.startswith("{\n")


def test_output_bytes_are_deterministic():
    cmd = [sys.executable, "-m", "addax.cli", "orbits-op-check", "Q[x,y]/(x^2,y^2)", "--U", "x, y"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_verify_table1_reports_rows():
    doc, code = run(["verify-table1", "--max-n", "3"])
    assert code == 0 and doc["summary"] == "4/4 rows matched"
