from __future__ import annotations

import json

import pytest
from openpyxl import load_workbook

from src.components.export import render_text, report_frames, write_report
from src.pipeline import CommandReport


@pytest.fixture
def report() -> CommandReport:
    return CommandReport(
        command="preprojective",
        verdict="computed",
        affirmative=True,
        field="QQ",
        bounds={"cap": 3, "n": 1},
        inputs=["kronecker"],
        result={"theta_dim": 12, "tower": {"dims": [4, 12, 20, 28]}},
        tables={"dims": [{"power": s, "dim": d} for s, d in enumerate([4, 12, 20, 28])]},
    )


def test_text_report(report):
    text = render_text(report)
    assert "verdict: computed" in text
    assert "bounds: cap=3, n=1" in text
    assert "[dims]" in text
    assert "theta_dim: 12" in text
    assert report_frames(report.tables)["dims"]["dim"].tolist() == [4, 12, 20, 28]


def test_json_report_round_trips(report, tmp_path):
    out = tmp_path / "nested" / "report.json"
    text = write_report(report, fmt="json", out=str(out))
    assert json.loads(out.read_text(encoding="utf-8")) == json.loads(text)
    assert json.loads(text)["tables"]["dims"][3] == {"power": 3, "dim": 28}
    with pytest.raises(ValueError):
        write_report(report, fmt="yaml")


def test_workbook_sheets(report, tmp_path):
    path = tmp_path / "report.xlsx"
    write_report(report, xlsx=str(path))
    wb = load_workbook(path)
    assert wb.sheetnames == ["Cover", "Certificate"]
    assert wb["Cover"]["B4"].value == "computed"


def test_empty_tables_render(report):
    report.tables = {"modules": []}
    assert "(empty)" in render_text(report)
