"""Assertion records and their md / csv / json renderings.

Renderings contain no timestamps or timings, so the same input always gives
the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

FORMATS = ("md", "csv", "json")


class UnknownFormat(ValueError):
    pass


@dataclass(frozen=True)
class AssertionRecord:
    file: str
    line: int
    col: int
    desc: str
    expected: str
    computed: str
    passed: bool
    detail: str = ""

    def as_json(self) -> dict:
        return {"file": self.file, "line": self.line, "col": self.col, "desc": self.desc,
                "expected": self.expected, "computed": self.computed, "pass": self.passed}

    def sort_key(self):
        return (self.file, self.line, self.col)


@dataclass
class ScenarioReport:
    scenario: str
    records: list[AssertionRecord] = field(default_factory=list)
    wall_time: float = 0.0   # informational only; never rendered

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r.passed)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def files(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.records:
            seen.setdefault(r.file, None)
        return list(seen)


def merge_reports(name: str, reports: Iterable[ScenarioReport]) -> ScenarioReport:
    """Deterministic merge: records sorted by file, then line and column."""
    reports = list(reports)
    records = sorted((r for rep in reports for r in rep.records), key=AssertionRecord.sort_key)
    return ScenarioReport(name, records, sum(rep.wall_time for rep in reports))


def _md_cell(s: str) -> str:
    return s.replace("|", "\\|").replace("\n", " ")


def render_md(report: ScenarioReport) -> str:
    out = [f"# {report.scenario}", ""]
    for f in report.files():
        out.append(f"## {f}")
        out.append("")
        out.append("| pos | check | expected | computed | result |")
        out.append("|---|---|---|---|---|")
        for r in report.records:
            if r.file != f:
                continue
            desc = r.desc + (f" [{r.detail}]" if r.detail else "")
            out.append(f"| {r.line}:{r.col} | `{_md_cell(desc)}` | {_md_cell(r.expected)} | "
                       f"{_md_cell(r.computed)} | {'pass' if r.passed else 'FAIL'} |")
        out.append("")
    files = report.files()
    if len(files) > 1:
        out += ["## Summary", "", "| file | passed | failed | status |", "|---|---|---|---|"]
        for f in files:
            ok = sum(1 for r in report.records if r.file == f and r.passed)
            bad = sum(1 for r in report.records if r.file == f and not r.passed)
            out.append(f"| {f} | {ok} | {bad} | {'passed' if not bad else 'FAILED'} |")
        out.append("")
    out.append(f"**{report.passed} passed, {report.failed} failed**")
    out.append("")
    return "\n".join(out)


def render_csv(report: ScenarioReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["file", "line", "col", "desc", "expected", "computed", "pass"])
    for r in report.records:
        w.writerow([r.file, r.line, r.col, r.desc, r.expected, r.computed,
                    "true" if r.passed else "false"])
    return buf.getvalue()


def render_json(report: ScenarioReport) -> str:
    doc = {
        "scenario": report.scenario,
        "assertions": [r.as_json() for r in report.records],
        "summary": {"passed": report.passed, "failed": report.failed},
    }
    return json.dumps(doc, indent=2) + "\n"


def emit_report(report: ScenarioReport, fmt: str = "md") -> bytes:
    if fmt == "md":
        return render_md(report).encode("utf-8")
    if fmt == "csv":
        return render_csv(report).encode("utf-8")
    if fmt == "json":
        return render_json(report).encode("utf-8")
    raise UnknownFormat(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def render_matrix(title: str, row_names: Sequence[str], col_names: Sequence[str],
                  cells: Sequence[Sequence[str]], fmt: str = "md") -> bytes:
    """A labeled table of already formatted entries."""
    if fmt == "md":
        lines = [f"| {title} | " + " | ".join(col_names) + " |",
                 "|---" * (len(col_names) + 1) + "|"]
        for name, row in zip(row_names, cells):
            lines.append(f"| {name} | " + " | ".join(row) + " |")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([title, *col_names])
        for name, row in zip(row_names, cells):
            w.writerow([name, *row])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {"title": title, "rows": list(row_names), "cols": list(col_names),
               "entries": [list(r) for r in cells]}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    raise UnknownFormat(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
