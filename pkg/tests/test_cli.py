import json
import shutil
import subprocess

import pytest

from conftest import KB_EXPR
from index3d.cli import main, series_from_json
from index3d.tetindex import tet_index


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example_fig8_kb(capsys):
    code, out, _ = run(capsys, "example", "fig8-kb", "--order", "18")
    assert code == 0
    assert "-3*q - q^2 + 7*q^3 + 15*q^4 + 22*q^5 + 11*q^6 - 11*q^7 - 60*q^8" in out


def test_example_fig8_kb_iota(capsys):
    code, out, _ = run(capsys, "example", "fig8-kb", "--iota")
    assert code == 0
    assert "= 1 - 3*q - 6*q^2 - q^3 + 9*q^4 + 28*q^5 + 39*q^6 + 45*q^7 + 20*q^8 + O(q^(17/2))" in out


def test_tet_index(capsys):
    code, out, _ = run(capsys, "tet-index", "0", "0", "--order", "10")
    assert code == 0
    assert out.strip() == "1 - q - 2*q^2 - 2*q^3 - 2*q^4 + O(q^5)"


def test_j_index_json_round_trip(capsys):
    code, out, _ = run(capsys, "j-index", "2", "1", "0", "--order", "12", "--json")
    assert code == 0
    doc = json.loads(out)
    assert series_from_json(doc) == tet_index(1, 1, 13).shift(-1) * -1


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "fixtures/fig8.json")
    assert code == 0
    assert "4_1: valid" in out and "symplectic" in out


def test_index_json(capsys):
    code, out, _ = run(capsys, "index", "fig8.json", "--element", KB_EXPR, "--order", "12", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["termination"] == "heuristic"
    assert doc["radius"] >= 3
    assert series_from_json(doc).to_text() == doc["text"]


def test_deterministic_output(capsys):
    first = run(capsys, "index", "fig8.json", "--element", KB_EXPR, "--order", "14", "--json")
    second = run(capsys, "index", "fig8.json", "--element", KB_EXPR, "--order", "14", "--json")
    assert first == second


def test_dgg(capsys):
    code, out, _ = run(capsys, "dgg", "fig8.json", "-m", "0", "-e", "1", "--order", "14")
    assert code == 0
    assert out.strip() == "-2*q - 2*q^2 + 2*q^3 + 8*q^4 + 16*q^5 + 16*q^6 + O(q^7)"
    code, _, err = run(capsys, "dgg", "fig8.json", "-m", "1/2", "-e", "0", "--order", "6")
    assert code == 1 and err.startswith("NonIntegralCharge:")


def test_check_relations(capsys, tmp_path, fig8_doc):
    code, out, _ = run(capsys, "check-relations", "fig8.json", "--monomial", "Zpp1*Zpp2", "--order", "10")
    assert code == 0 and "FAIL" not in out
    fig8_doc["edge_rows"][1] = [0, 1, 2, 0, 2, 1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(fig8_doc))
    code, _, err = run(capsys, "check-relations", str(bad), "--order", "10")
    assert code == 1 and err.startswith("SymplecticViolation:")
    code, out, _ = run(capsys, "check-relations", str(bad), "--order", "10", "--no-validate")
    assert code == 1 and "FAIL edge E1" in out


def test_pachner_check(capsys):
    code, out, _ = run(capsys, "pachner-check", "fig8_move.json", "--order", "10", "--element", KB_EXPR)
    assert code == 0
    assert out.count("PASS") == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["tet-index", "0"],
        ["tet-index", "0", "0", "--order", "0"],
        ["dgg", "fig8.json", "-m", "abc", "-e", "0", "--order", "4"],
        ["index", "fig8.json", "--element", "1", "--order", "4", "--shell-window", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2


def test_computation_errors(capsys):
    code, _, err = run(capsys, "index", "fig8.json", "--element", "Z9", "--order", "4")
    assert code == 1 and err.startswith("ParseError:")
    code, _, err = run(capsys, "validate", "no-such-file.json")
    assert code == 1 and err.startswith("ParseError:")
    code, _, err = run(capsys, "index", "fig8.json", "--element", "1", "--order", "60", "--max-radius", "2")
    assert code == 1 and err.startswith("RadiusExceeded:")


@pytest.mark.skipif(shutil.which("index3d") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["index3d", "tet-index", "0", "0", "--order", "6"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1 - q - 2*q^2 + O(q^3)"
