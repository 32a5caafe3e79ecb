import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from intersect_lab.cli import main, scenario_dir
from intersect_lab.report import (AssertionRecord, ScenarioReport, UnknownFormat, emit_report,
                                  merge_reports)

from report_schema import REPORT_SCHEMA

DATA = Path(__file__).parent / "data"


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "intersect_lab.cli", *args],
                          capture_output=True, env=env)


# report rendering ----------------------------------------------------------------------

def test_empty_report_json():
    doc = json.loads(emit_report(ScenarioReport("empty"), "json"))
    assert doc == {"scenario": "empty", "assertions": [], "summary": {"passed": 0, "failed": 0}}
    jsonschema.validate(doc, REPORT_SCHEMA)


def test_failed_record_csv():
    rec = AssertionRecord("f.isl", 3, 1, "A2: M2^3 == 1/61", "1/61", "1/60", False)
    rows = list(csv.reader(io.StringIO(emit_report(ScenarioReport("s", [rec]), "csv").decode())))
    assert rows[0] == ["file", "line", "col", "desc", "expected", "computed", "pass"]
    assert rows[1] == ["f.isl", "3", "1", "A2: M2^3 == 1/61", "1/61", "1/60", "false"]


def test_unknown_format_and_merge_order():
    with pytest.raises(UnknownFormat):
        emit_report(ScenarioReport("s"), "xml")
    a = ScenarioReport("a", [AssertionRecord("b.isl", 1, 1, "x", "1", "1", True)])
    b = ScenarioReport("b", [AssertionRecord("a.isl", 2, 1, "y", "1", "1", True)])
    assert [r.file for r in merge_reports("m", [a, b]).records] == ["a.isl", "b.isl"]


def test_md_has_no_timing():
    rep = ScenarioReport("s", [AssertionRecord("f.isl", 1, 1, "x", "1", "1", True)], wall_time=1.5)
    assert "1.5" not in emit_report(rep, "md").decode()


# command line ------------------------------------------------------------------------------

def test_eval():
    out = run("eval", "A2", "D2^3")
    assert out.returncode == 0 and out.stdout == b"-11/12\n"
    assert run("eval", "X1", "T^2").stdout == b"1/24\n"
    assert run("eval", "A3_H4", "F1*SD").stdout == b"1/4\n"


def test_check_exit_codes():
    assert run("check", str(DATA / "one_failure.isl")).returncode == 1
    missing = run("check", "missing.isl")
    assert missing.returncode == 2
    assert b"missing.isl" in missing.stderr and b"not found" in missing.stderr
    bad = run("check", str(DATA / "corrupted.isl"))
    assert bad.returncode == 2
    assert f"{DATA / 'corrupted.isl'}:4:1: error: expected".encode() in bad.stderr
    assert run("eval", "A9", "x").returncode == 2
    assert run("bogus").returncode == 2
    assert run("check", "--format", "xml", "x.isl").returncode == 2


def test_repro_json_schema_and_determinism():
    first = run("repro", "--format", "json")
    second = run("repro", "--format", "json", "--jobs", "1")
    assert first.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert doc["summary"]["failed"] == 0
    files = [a["file"] for a in doc["assertions"]]
    assert files == sorted(files)


def test_repro_md_summary_lists_every_scenario():
    out = run("repro").stdout.decode()
    for p in scenario_dir().glob("*.isl"):
        assert f"| {p.name} |" in out
    assert "0 failed" in out


def test_repro_honors_environment(tmp_path):
    (tmp_path / "b.isl").write_text("assert 1 == 2;\n")
    (tmp_path / "a.isl").write_text("assert 1 == 1;\n")
    env = dict(os.environ, INTERSECT_LAB_SCENARIOS=str(tmp_path))
    out = run("repro", "--format", "csv", env=env)
    assert out.returncode == 1
    lines = out.stdout.decode().splitlines()
    assert [l.split(",")[0] for l in lines[1:]] == ["a.isl", "b.isl"]


def test_table_and_out(tmp_path):
    target = tmp_path / "t.md"
    code = main(["table", "A3_H4", "--rows", "SA,SF,SD,C4,K31", "--out", str(target)])
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "| A3_H4 | L^2 | L*M | M^2 | B2 |"
    assert lines[2] == "| SA | 1/1152 | 0 | 0 | 1/16 |"
    assert len(lines) == 7


def test_cone_subcommands(tmp_path):
    out = tmp_path / "o.csv"
    assert main(["cone", "dual", "--space", "A3_H4", "SA", "SF", "SD", "C4", "K31",
                 "--format", "csv", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "dual ray,L^2,LM,M^2,B2"
    assert "r3,72,-12,3,-1" in rows
    assert main(["cone", "member", "--space", "A3_H4", "SA", "SF", "C4", "K31", "--query", "SD",
                 "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1] == 'SD,false,separator,"(6, -1, 1/12, -1/12)"'
    assert main(["cone", "extremal", "[1,0]", "[0,1]", "[1,1]", "--format", "json",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [r[0] for r in doc["entries"]] == ["true", "true", "false"]
    assert main(["cone", "dual", "SA"]) == 2


def test_catalog(tmp_path):
    out = tmp_path / "c.json"
    assert main(["catalog", "X1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["X1"]["catalog"][0]["name"] == "T"


def test_dual_cone_against_stated_generators_is_reported_unequal():
    # the dual of the five-surface cone has the ray 72L^2 - 12LM + 3M^2 - beta2 in place of M^2
    out = run("check", "--format", "json", str(DATA / "nef_as_stated.isl"))
    assert out.returncode == 1
    (rec,) = json.loads(out.stdout)["assertions"]
    assert "(72, -12, 3, -1)" in rec["computed"] and "(0, 0, 1, 0)" in rec["expected"]
