from __future__ import annotations

from pathlib import Path
from typing import Sequence

from openpyxl import Workbook
from openpyxl.styles import Font


SCAN_SHEET = "scan"


def write_scan_workbook(path: Path, headers: Sequence[str], rows: Sequence[Sequence[object]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    wb = Workbook()
    ws = wb.active
    ws.title = SCAN_SHEET
    ws.append(list(headers))
    for cell in ws[1]:
        cell.font = Font(bold=True)
    for row in rows:
        ws.append([cell if isinstance(cell, (int, float, bool)) or cell is None else str(cell) for cell in row])
    for idx, header in enumerate(headers, start=1):
        width = max([len(str(header))] + [len(str(row[idx - 1])) for row in rows if idx - 1 < len(row)])
        ws.column_dimensions[ws.cell(row=1, column=idx).column_letter].width = min(width + 2, 80)
    wb.save(path)
    return path

