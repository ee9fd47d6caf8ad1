from pathlib import Path

import pytest

from rees_ag.settings_store import (
    NMAX_ENV,
    AppSettings,
    app_data_dir,
    apply_env_overrides,
    clamp_nmax,
    default_log_dir,
    default_settings_path,
    load_settings,
    save_settings,
)


def test_settings_store_roundtrip(tmp_path: Path):
    settings_path = tmp_path / "settings.json"
    loaded = load_settings(settings_path=settings_path)
    assert loaded == AppSettings()
    assert loaded.nmax == 40
    assert loaded.output_format == "text"

    save_settings(AppSettings(nmax=60, output_format="json", scan_jobs=4, log_level="DEBUG"), settings_path=settings_path)
    reloaded = load_settings(settings_path=settings_path)
    assert reloaded.nmax == 60
    assert reloaded.output_format == "json"
    assert reloaded.scan_jobs == 4
    assert reloaded.log_level == "DEBUG"


def test_malformed_settings_fall_back_to_defaults(tmp_path: Path):
    settings_path = tmp_path / "settings.json"
    settings_path.write_text("[1, 2", encoding="utf-8")
    assert load_settings(settings_path=settings_path) == AppSettings()
    settings_path.write_text('{"nmax": 100000, "output_format": "xml", "scan_jobs": "many", "log_level": "loud"}', encoding="utf-8")
    sanitised = load_settings(settings_path=settings_path)
    assert sanitised == AppSettings(nmax=200, output_format="text", scan_jobs=1, log_level="INFO")


def test_env_override(monkeypatch: pytest.MonkeyPatch):
    base = AppSettings(nmax=30, output_format="json")
    assert apply_env_overrides(base) == base
    monkeypatch.setenv(NMAX_ENV, "12")
    overridden = apply_env_overrides(base)
    assert overridden.nmax == 12
    assert overridden.output_format == "json"
    monkeypatch.setenv(NMAX_ENV, "lots")
    assert apply_env_overrides(base).nmax == 30


def test_clamp_nmax():
    assert clamp_nmax(0) == 1
    assert clamp_nmax("500") == 200
    assert clamp_nmax(None, fallback=7) == 7


def test_app_data_dir_follows_appdata(isolated_appdata: Path, monkeypatch: pytest.MonkeyPatch, tmp_path: Path):
    assert app_data_dir() == isolated_appdata / "ReesAG"
    assert default_settings_path() == isolated_appdata / "ReesAG" / "settings.json"
    assert default_log_dir() == isolated_appdata / "ReesAG" / "logs"
    monkeypatch.delenv("APPDATA")
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    assert app_data_dir() == tmp_path / "home" / ".rees_ag"
