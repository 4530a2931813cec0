import json
import re
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from incrcad import engine
from incrcad.cli import main

F1_TEXT = "x1^2 + x2^2 - 1\nx1^3 - x2^2  # the cusp\n"


@pytest.fixture
def f1_state(tmp_path):
    polys = tmp_path / "f1.txt"
    polys.write_text(F1_TEXT)
    out = tmp_path / "f1.json"
    assert main(["build", "--vars", "x1,x2", "--polys", str(polys), "--out", str(out)]) == 0
    return out


def test_build_reports_counts(f1_state, capsys, tmp_path):
    out = tmp_path / "inline.json"
    assert main(["build", "--vars", "x1,x2", "--polys", "x1^2 + x2^2 - 1; x1^3 - x2^2", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "level 1 (x1): 9 cells, 5 open" in text
    assert "full-dimensional open cells: 17" in text
    assert out.read_text() == f1_state.read_text()


def test_add_reports_new_base_point(f1_state, capsys, tmp_path):
    out = tmp_path / "f3.json"
    assert main(["add", "--state", str(f1_state), "--poly", "x1^3 + x2^2", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "new base points: 1" in text
    assert "level 1: 11 cells" in text
    m = re.search(r"projection operations: (\d+) incremental, (\d+) from scratch", text)
    assert int(m.group(1)) <= int(m.group(2))
    assert len(engine.load(str(out)).tree.cells(1)) == 11


def test_add_overwrites_state_by_default(f1_state):
    before = f1_state.read_text()
    assert main(["add", "--state", str(f1_state), "--poly", "x2 - x1"]) == 0
    assert f1_state.read_text() != before


def test_add_duplicate(f1_state, capsys):
    before = f1_state.read_text()
    assert main(["add", "--state", str(f1_state), "--poly", "x2^2 + x1^2 - 1"]) == 0
    cap = capsys.readouterr()
    assert "E_DUP_INPUT" in cap.err
    assert "state unchanged" in cap.out
    assert f1_state.read_text() == before


@pytest.mark.parametrize("poly,code", [("0", "E_ZERO_POLY"), ("x3 + 1", "E_UNKNOWN_VAR"), ("x1 +* 2", "E_PARSE")])
def test_add_input_errors(f1_state, capsys, poly, code):
    assert main(["add", "--state", str(f1_state), "--poly", poly]) == 2
    assert capsys.readouterr().err.startswith(code)


def test_build_input_errors(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n")
    assert main(["build", "--vars", "x1", "--polys", str(empty), "--out", str(tmp_path / "o.json")]) == 2
    assert "E_EMPTY_INPUT" in capsys.readouterr().err
    assert main(["build", "--vars", "x1", "--polys", "x1; x1", "--out", str(tmp_path / "o.json")]) == 2
    assert "E_DUP_INPUT" in capsys.readouterr().err


def test_schema_error_and_missing_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1}')
    assert main(["cells", "--state", str(bad)]) == 2
    assert capsys.readouterr().err.startswith("E_SCHEMA")
    assert main(["cells", "--state", str(tmp_path / "missing.json")]) == 2
    assert capsys.readouterr().err.startswith("E_IO")


def test_usage_errors(f1_state, capsys):
    with pytest.raises(SystemExit) as e:
        main(["build", "--vars", "x1"])
    assert e.value.code == 64
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 64
    assert main(["cells", "--state", str(f1_state), "--level", "3"]) == 64
    capsys.readouterr()


def test_cells_text_and_json(f1_state, capsys):
    assert main(["cells", "--state", str(f1_state), "--level", "1"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("[")]
    assert len(lines) == 9
    assert lines[0].startswith("[1] open") and "sample (-2)" in lines[0]
    assert "x1 = -1" in lines[1]
    assert "root(x1^3 + x1^2 - 1" in lines[5]
    assert main(["cells", "--state", str(f1_state), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["2"]) == 17
    assert doc["2"][0]["index"] == [1, 1]
    assert all(c["kind"] == "open" for c in doc["2"])


def test_check_passes(f1_state, capsys):
    assert main(["check", "--state", str(f1_state), "--probes", "5"]) == 0
    out = capsys.readouterr().out
    assert "recompute oracle: pass" in out and "sign invariance (17 cells, 5 probes each): pass" in out


def test_check_fails_on_corrupted_sample(f1_state, capsys):
    doc = json.loads(f1_state.read_text())
    # cell [3,2] lies strictly between the two roots above x1 = -1/2; move its sample outside
    cell = next(c for c in doc["tree"]["levels"][1] if c["index"] == [3, 2])
    cell["sample"] = [cell["sample"][0], "5"]
    f1_state.write_text(json.dumps(doc))
    assert main(["check", "--state", str(f1_state)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "(3, 2)" in out


def test_bench_json(capsys):
    assert main(["bench", "--dims", "2", "--count", "3", "--seed", "4", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["equivalence_passes"] == 3 and doc["equivalence_failures"] == []
    assert set(doc["summary"]["projection"]["classical"]) == {
        "Variance", "Mean", "Lower Quartile", "Median", "Upper Quartile"}


def test_bench_table_and_usage(capsys):
    assert main(["bench", "--dims", "3", "--count", "2"]) == 0
    out = capsys.readouterr().out
    for row in ("Variance", "Mean", "Lower Quartile", "Median", "Upper Quartile"):
        assert out.count(row) == 3
    assert "equivalence: 2 passed, 0 failed" in out
    assert main(["bench", "--dims", "2", "--count", "0"]) == 64
    with pytest.raises(SystemExit) as e:
        main(["bench", "--dims", "4"])
    assert e.value.code == 64


def test_plot_svg(f1_state, tmp_path, capsys):
    out = tmp_path / "f1.svg"
    assert main(["plot", "--state", str(f1_state), "--out", str(out)]) == 0
    root = ET.fromstring(out.read_text())
    ns = "{http://www.w3.org/2000/svg}"
    assert root.tag == ns + "svg" and root.get("version") == "1.1"
    xs = sorted(float(l.get("data-x")) for l in root.iter(ns + "line") if l.get("data-x"))
    assert xs == [-1.0, 0.0, 0.754878, 1.0]
    labels = [t.text for t in root.iter(ns + "text")]
    assert "5,3" in labels and "1,1" in labels
    assert len(list(root.iter(ns + "circle"))) > 1000


def test_plot_window_and_csv(f1_state, tmp_path):
    out = tmp_path / "zoom.svg"
    assert main(["plot", "--state", str(f1_state), "--out", str(out), "--window=-0.5,0.5,-1,1"]) == 0
    root = ET.fromstring(out.read_text())
    xs = [float(l.get("data-x")) for l in root.iter("{http://www.w3.org/2000/svg}line") if l.get("data-x")]
    assert xs == [0.0]
    csv_out = tmp_path / "f1.csv"
    assert main(["plot", "--state", str(f1_state), "--out", str(csv_out)]) == 0
    rows = csv_out.read_text().splitlines()
    assert rows[0] == "index,lower,upper,sample"
    assert rows[1] == "1,-inf,-1.000000,-2"
    assert "6,0.754878,0.754878," in rows
    assert len(rows) == 1 + 9 + 17


def test_plot_usage(f1_state, tmp_path):
    assert main(["plot", "--state", str(f1_state), "--out", str(tmp_path / "x.png")]) == 64
    three = tmp_path / "t.json"
    assert main(["build", "--vars", "x1,x2,x3", "--polys", "x3 - x1", "--out", str(three)]) == 0
    assert main(["plot", "--state", str(three), "--out", str(tmp_path / "t.svg")]) == 64
    with pytest.raises(SystemExit) as e:
        main(["plot", "--state", str(f1_state), "--out", "a.svg", "--window=1,0,0,1"])
    assert e.value.code == 64


def test_console_entry_point(tmp_path):
    out = tmp_path / "s.json"
    r = subprocess.run([sys.executable, "-m", "incrcad.cli", "build", "--vars", "x1,x2", "--polys", "-",
                        "--out", str(out)], input=F1_TEXT, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    r = subprocess.run([sys.executable, "-m", "incrcad.cli", "check", "--state", str(out)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "cylindricity: pass" in r.stdout
