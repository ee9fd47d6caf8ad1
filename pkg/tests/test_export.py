from pathlib import Path

from openpyxl import load_workbook

from rees_ag.export import SCAN_SHEET, write_scan_workbook


def test_scan_workbook_roundtrip(tmp_path: Path, read_scan_table):
    headers = ["n", "Q", "status", "rule", "type", "message"]
    rows = [
        [2, "(x, y^2, z^2)", "AlmostGorensteinProper", "socle_x_plus_m_squared", 3, ""],
        [3, "(x, y^2, z^3)", "NotAlmostGorenstein", "socle_not_x_plus_m_squared", 3, ""],
    ]
    path = write_scan_workbook(tmp_path / "out" / "scan.xlsx", headers, rows)
    assert path.exists()

    read_headers, read_rows = read_scan_table(path)
    assert read_headers == headers
    assert read_rows[0][:5] == [2, "(x, y^2, z^2)", "AlmostGorensteinProper", "socle_x_plus_m_squared", 3]
    assert read_rows[1][2] == "NotAlmostGorenstein"

    wb = load_workbook(path)
    ws = wb[SCAN_SHEET]
    assert ws["A1"].font.bold
    assert ws.column_dimensions["B"].width >= len("(x, y^2, z^2)")
