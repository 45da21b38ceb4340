import json

import pytest

from epgdom.cli import main


def test_info(capsys):
    assert main(["info", "E3^2xQ8"]) == 0
    out = capsys.readouterr().out
    assert "order:       72" in out
    assert "generalized_quaternion" in out
    assert "strong domination formula: 4" in out


def test_info_non_nilpotent(tmp_path, capsys):
    table = tmp_path / "s3.tbl"
    table.write_text(
        "6\n0 1 2 3 4 5\n1 2 0 4 5 3\n2 0 1 5 3 4\n3 5 4 0 2 1\n4 3 5 1 0 2\n5 4 3 2 1 0\n"
    )
    assert main(["info", f"file:{table}"]) == 0
    assert "not nilpotent" in capsys.readouterr().out


def test_graph_exports(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    js = tmp_path / "g.json"
    code = main(["graph", "Q8", "--mode", "proper",
                 "--dot", str(dot), "--json", str(js)])
    assert code == 0
    assert "6 vertices, 3 edges, 3 components" in capsys.readouterr().out
    assert dot.read_text().count("--") == 3
    payload = json.loads(js.read_text())
    assert payload["mode"] == "proper" and payload["order"] == 6


def test_dominate_outputs_certificate(capsys):
    assert main(["dominate", "Q16", "--kind", "total"]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["size"] == 10 and cert["status"] == "optimal"
    assert cert["method"] == "branch_and_bound"


def test_dominate_respects_budget(capsys):
    code = main(["dominate", "E3^2xQ8", "--kind", "total", "--budget", "2"])
    assert code == 3
    assert "budget" in capsys.readouterr().err


def test_verify_single_spec(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--spec", "Q8", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "verdict=MATCH" in stdout
    assert json.loads(out.read_text())["rows"][0]["spec"] == "Q8"


def test_verify_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    assert main(["verify", "--spec", "Q8", "--spec", "Z6",
                 "--out", str(out), "--format", "csv"]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and lines[0].startswith("spec,")


def test_verify_catalog_file_and_mismatch_exit(tmp_path):
    catalog = tmp_path / "cat.txt"
    out = tmp_path / "r.json"
    catalog.write_text("E3^2xZ2\n")  # discrepancy without its tag
    assert main(["verify", "--catalog", str(catalog), "--out", str(out)]) == 1
    catalog.write_text("E3^2xZ2 #tags: known-discrepancy\n")
    assert main(["verify", "--catalog", str(catalog), "--out", str(out)]) == 0


def test_selftest_cli(capsys):
    assert main(["selftest", "--seed", "3", "--trials", "12", "--max-n", "10"]) == 0
    assert "PASS" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["info", "Q7"],
    ["info", "Zx"],
    ["graph", "Q8", "--dot", "/nonexistent-dir/x.dot"],
    ["verify", "--catalog", "/nonexistent-file", "--out", "/tmp/r.json"],
])
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error:" in capsys.readouterr().err
