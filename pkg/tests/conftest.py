from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest
import sympy
from openpyxl import load_workbook


PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from rees_ag.export import SCAN_SHEET  # noqa: E402
from rees_ag.polyring import RingDescriptor  # noqa: E402


@pytest.fixture
def xyz() -> RingDescriptor:
    return RingDescriptor(("x", "y", "z"))


@pytest.fixture
def xyzw() -> RingDescriptor:
    return RingDescriptor(("x", "y", "z", "w"))


@pytest.fixture
def write_instance(tmp_path: Path):
    def _write(payload: dict, name: str = "instance.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def as_sympy():
    def _convert(value, ring: RingDescriptor | None = None):
        ring = ring or value.ring
        symbols = {name: sympy.Symbol(name) for name in ring.variables}
        return sympy.sympify(str(value).replace("^", "**"), locals=symbols)

    return _convert


@pytest.fixture
def read_scan_table():
    def _read(path: Path) -> tuple[list[str], list[list[object]]]:
        wb = load_workbook(path, data_only=True, read_only=True)
        rows = [list(row) for row in wb[SCAN_SHEET].iter_rows(values_only=True)]
        wb.close()
        return [str(h) for h in rows[0]], rows[1:]

    return _read


@pytest.fixture(autouse=True)
def isolated_appdata(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    appdata = tmp_path / "appdata"
    monkeypatch.setenv("APPDATA", str(appdata))
    monkeypatch.delenv("REES_AG_NMAX", raising=False)
    return appdata
