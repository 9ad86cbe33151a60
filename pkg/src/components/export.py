from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from src.components.excel_exporter import ExcelExporter


LADDER_COLUMNS = ("power", "degree", "s", "stage")


def report_frames(tables: Dict[str, List[Dict[str, Any]]]) -> Dict[str, pd.DataFrame]:
    return {name: pd.DataFrame(rows) for name, rows in sorted(tables.items())}


def render_json(report, indent: int = 2) -> str:
    return report.to_json(indent=indent) + "\n"


def _scalar_lines(result: Dict[str, Any]) -> List[str]:
    lines = []
    for key, value in sorted(result.items()):
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"  {key}: {value}")
    return lines


def render_text(report) -> str:
    lines = [
        f"tensorcoh {report.version} :: {report.command}",
        f"verdict: {report.verdict}",
        f"field: {report.field}",
        "bounds: " + ", ".join(f"{k}={v}" for k, v in sorted(report.bounds.items())),
    ]
    if report.inputs:
        lines.append("inputs: " + " ".join(report.inputs))
    for name, frame in report_frames(report.tables).items():
        lines.append("")
        lines.append(f"[{name}]")
        lines.append(frame.to_string(index=False) if not frame.empty else "(empty)")
    scalars = {k: v for k, v in report.result.items() if k not in report.tables}
    if scalars:
        lines.append("")
        lines.append("[result]")
        lines.extend(_scalar_lines(scalars))
    return "\n".join(lines) + "\n"


def _chart_for(frame: pd.DataFrame) -> Optional[Dict[str, str]]:
    category = next((c for c in LADDER_COLUMNS if c in frame.columns), None)
    if category is None or "dim" not in frame.columns:
        return None
    return {"category": category, "value": "dim", "kind": "bar"}


def build_workbook(report) -> ExcelExporter:
    exporter = ExcelExporter()
    exporter.create_cover_sheet(
        {
            "title": f"tensorcoh {report.command}",
            "verdict": report.verdict,
            "affirmative": report.affirmative,
            "run": {"command": report.command, "version": report.version, "field": report.field, "inputs": " ".join(report.inputs)},
            "bounds": dict(sorted(report.bounds.items())),
        }
    )
    sections = [
        {"title": name, "data": frame, "chart": _chart_for(frame)}
        for name, frame in report_frames(report.tables).items()
    ]
    scalars = {k: v for k, v in sorted(report.result.items()) if k not in report.tables}
    if scalars:
        rows = [{"key": k, "value": json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v} for k, v in scalars.items()]
        sections.append({"title": "result", "data": pd.DataFrame(rows)})
    exporter.add_data_sheet("Certificate", sections)
    return exporter


def write_report(report, *, fmt: str = "text", out: Optional[str] = None, xlsx: Optional[str] = None, indent: int = 2) -> str:
    """Render ``report``; writes to ``out`` when given and returns the rendered text."""
    if fmt not in ("text", "json"):
        raise ValueError(f"Unknown output format {fmt!r}")
    text = render_json(report, indent) if fmt == "json" else render_text(report)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    if xlsx:
        build_workbook(report).save(xlsx)
    return text
