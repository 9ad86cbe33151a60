from __future__ import annotations

"""
Styled workbooks for certificate reports, built with openpyxl.

A workbook has a cover sheet with the verdict, bounds and inputs of the run,
followed by one sheet of tabular sections. Dimension ladders get a chart.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
from openpyxl import Workbook
from openpyxl.chart import BarChart, LineChart, Reference
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter


class ExportColors:
    HEADER_BG = "2C3E50"
    SUBHEADER_BG = "34495E"
    TABLE_HEADER_BG = "5DADE2"
    ALT_ROW_BG = "F8F9F9"
    COVER_BG = "1A5490"
    SECTION_BORDER = "34495E"

    HEADER_TEXT = "FFFFFF"
    NORMAL_TEXT = "000000"
    MUTED_TEXT = "7F8C8D"

    AFFIRMATIVE_BG = "D5F4E6"
    NEGATIVE_BG = "FADBD8"


def _thin_border(color: str) -> Border:
    side = Side(style="thin", color=color)
    return Border(left=side, right=side, top=side, bottom=side)


class ExportStyles:
    @staticmethod
    def cover_title():
        return {
            "font": Font(name="Arial", size=20, bold=True, color=ExportColors.HEADER_TEXT),
            "fill": PatternFill("solid", fgColor=ExportColors.COVER_BG),
            "alignment": Alignment(horizontal="center", vertical="center"),
        }

    @staticmethod
    def section_header():
        return {
            "font": Font(name="Arial", size=12, bold=True, color=ExportColors.HEADER_TEXT),
            "fill": PatternFill("solid", fgColor=ExportColors.HEADER_BG),
            "alignment": Alignment(horizontal="left", vertical="center"),
        }

    @staticmethod
    def table_header():
        return {
            "font": Font(name="Arial", size=11, bold=True, color=ExportColors.HEADER_TEXT),
            "fill": PatternFill("solid", fgColor=ExportColors.TABLE_HEADER_BG),
            "alignment": Alignment(horizontal="center", vertical="center", wrap_text=True),
            "border": _thin_border(ExportColors.SECTION_BORDER),
        }

    @staticmethod
    def data_cell(is_alt: bool = False):
        return {
            "font": Font(name="Arial", size=10, color=ExportColors.NORMAL_TEXT),
            "fill": PatternFill("solid", fgColor=ExportColors.ALT_ROW_BG if is_alt else "FFFFFF"),
            "alignment": Alignment(horizontal="left", vertical="center"),
            "border": _thin_border(ExportColors.ALT_ROW_BG),
        }

    @staticmethod
    def verdict(affirmative: bool):
        return {
            "font": Font(name="Arial", size=12, bold=True, color=ExportColors.NORMAL_TEXT),
            "fill": PatternFill("solid", fgColor=ExportColors.AFFIRMATIVE_BG if affirmative else ExportColors.NEGATIVE_BG),
        }


def _apply(cell, styles: Dict[str, Any]) -> None:
    for attr, value in styles.items():
        setattr(cell, attr, value)


class ExcelExporter:
    """Workbook builder for one command report."""

    def __init__(self):
        self.workbook = Workbook()
        self.workbook.remove(self.workbook.active)

    def create_cover_sheet(self, metadata: Dict[str, Any]) -> None:
        ws = self.workbook.create_sheet("Cover", 0)
        ws.column_dimensions["A"].width = 28
        ws.column_dimensions["B"].width = 60

        ws.merge_cells("A1:B2")
        _apply(ws["A1"], ExportStyles.cover_title())
        ws["A1"].value = metadata.get("title", "tensorcoh report")
        ws.row_dimensions[1].height = 26
        ws.row_dimensions[2].height = 26

        ws["A4"] = "Verdict"
        ws["B4"] = metadata.get("verdict", "")
        _apply(ws["B4"], ExportStyles.verdict(bool(metadata.get("affirmative"))))

        row = 6
        for heading, key in (("RUN", "run"), ("BOUNDS", "bounds")):
            self._section_header(ws, row, heading)
            row += 1
            for label, value in metadata.get(key, {}).items():
                ws[f"A{row}"] = label
                ws[f"B{row}"] = self._format_cell_value(value)
                row += 1
            row += 1

    def add_data_sheet(self, title: str, sections: List[Dict]) -> None:
        ws = self.workbook.create_sheet(title[:31])
        ws.merge_cells("A1:E1")
        cell = ws["A1"]
        cell.value = title
        cell.font = Font(name="Arial", size=14, bold=True, color=ExportColors.HEADER_TEXT)
        cell.fill = PatternFill("solid", fgColor=ExportColors.SUBHEADER_BG)
        cell.alignment = Alignment(horizontal="center", vertical="center")
        row = 3
        for section in sections:
            row = self._write_section(
                ws,
                row,
                section.get("title", "Untitled"),
                section.get("data", pd.DataFrame()),
                section.get("description", ""),
                section.get("chart"),
            )
            row += 2

    def save(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.workbook.save(path)

    # ----- internal helpers -----
    def _section_header(self, ws, row: int, text: str) -> None:
        ws.merge_cells(f"A{row}:B{row}")
        cell = ws[f"A{row}"]
        cell.value = text
        _apply(cell, ExportStyles.section_header())

    def _write_section(self, ws, row: int, title: str, df: pd.DataFrame, description: str, chart: Optional[Dict]) -> int:
        width = max(1, len(df.columns))
        ws.merge_cells(f"A{row}:{get_column_letter(width)}{row}")
        cell = ws[f"A{row}"]
        cell.value = title
        cell.font = Font(name="Arial", size=12, bold=True, color=ExportColors.NORMAL_TEXT)
        cell.fill = PatternFill("solid", fgColor=ExportColors.ALT_ROW_BG)
        row += 1

        if description:
            ws.merge_cells(f"A{row}:{get_column_letter(width)}{row}")
            ws[f"A{row}"].value = description
            ws[f"A{row}"].font = Font(name="Arial", size=9, italic=True, color=ExportColors.MUTED_TEXT)
            row += 1

        if df.empty:
            ws[f"A{row}"] = "Nothing computed."
            return row + 1

        header_row = row
        for idx, column in enumerate(df.columns, start=1):
            header = ws.cell(row=header_row, column=idx)
            header.value = str(column)
            _apply(header, ExportStyles.table_header())
        first = header_row + 1
        for offset, values in enumerate(df.itertuples(index=False)):
            for c_idx, value in enumerate(values, start=1):
                data = ws.cell(row=first + offset, column=c_idx)
                data.value = self._format_cell_value(value)
                _apply(data, ExportStyles.data_cell(offset % 2 == 1))
        self._auto_width(ws, df)
        row = first + len(df)

        if chart and chart.get("value") in df.columns:
            self._insert_chart(ws, header_row, first, row - 1, df, chart)
            row += 16
        return row

    @staticmethod
    def _auto_width(ws, df: pd.DataFrame) -> None:
        for idx, col in enumerate(df.columns, start=1):
            longest = max([len(str(col))] + [len(str(v)) for v in df[col]])
            letter = get_column_letter(idx)
            ws.column_dimensions[letter].width = max(ws.column_dimensions[letter].width or 0, min(longest + 2, 50))

    def _insert_chart(self, ws, header_row: int, first: int, last: int, df: pd.DataFrame, cfg: Dict) -> None:
        value_col = list(df.columns).index(cfg["value"]) + 1
        category = cfg.get("category")
        chart = LineChart() if cfg.get("kind") == "line" else BarChart()
        if isinstance(chart, BarChart):
            chart.type = "col"
        chart.style = 10
        chart.title = cfg.get("title", str(cfg["value"]))
        chart.add_data(Reference(ws, min_col=value_col, min_row=header_row, max_row=last), titles_from_data=True)
        if category in df.columns:
            cat_col = list(df.columns).index(category) + 1
            chart.set_categories(Reference(ws, min_col=cat_col, min_row=first, max_row=last))
        chart.height = 8
        chart.width = 16
        ws.add_chart(chart, f"{get_column_letter(len(df.columns) + 2)}{header_row}")

    @staticmethod
    def _format_cell_value(value):
        if isinstance(value, (list, tuple, dict)):
            return str(value)
        if value is None:
            return ""
        return value
