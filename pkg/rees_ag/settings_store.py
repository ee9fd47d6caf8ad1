from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from .artinian import DEFAULT_NMAX


logger = logging.getLogger(__name__)

NMAX_ENV = "REES_AG_NMAX"
NMAX_LIMITS = (1, 200)
OUTPUT_FORMATS = {"text", "json"}
LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR"}


@dataclass
class AppSettings:
    nmax: int = DEFAULT_NMAX
    output_format: str = "text"
    scan_jobs: int = 1
    log_level: str = "INFO"


def app_data_dir() -> Path:
    appdata = os.getenv("APPDATA")
    if appdata:
        return Path(appdata) / "ReesAG"
    return Path.home() / ".rees_ag"


def default_settings_path() -> Path:
    return app_data_dir() / "settings.json"


def default_log_dir() -> Path:
    return app_data_dir() / "logs"


def clamp_nmax(value: object, fallback: int = DEFAULT_NMAX) -> int:
    try:
        nmax = int(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        return fallback
    low, high = NMAX_LIMITS
    return max(low, min(high, nmax))


def load_settings(settings_path: Path | None = None) -> AppSettings:
    path = settings_path or default_settings_path()
    if not path.exists():
        return AppSettings()
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        nmax = clamp_nmax(payload.get("nmax", DEFAULT_NMAX))
        output_format = str(payload.get("output_format", "text")).lower().strip()
        if output_format not in OUTPUT_FORMATS:
            output_format = "text"
        try:
            scan_jobs = max(1, int(payload.get("scan_jobs", 1)))
        except (TypeError, ValueError):
            scan_jobs = 1
        log_level = str(payload.get("log_level", "INFO")).upper().strip()
        if log_level not in LOG_LEVELS:
            log_level = "INFO"
        return AppSettings(nmax=nmax, output_format=output_format, scan_jobs=scan_jobs, log_level=log_level)
    except Exception:
        logger.warning("Could not read settings from %s; using defaults", path)
        return AppSettings()


def apply_env_overrides(settings: AppSettings) -> AppSettings:
    raw = os.getenv(NMAX_ENV)
    if raw is None or not raw.strip():
        return settings
    return AppSettings(
        nmax=clamp_nmax(raw.strip(), fallback=settings.nmax),
        output_format=settings.output_format,
        scan_jobs=settings.scan_jobs,
        log_level=settings.log_level,
    )


def save_settings(settings: AppSettings, settings_path: Path | None = None) -> None:
    path = settings_path or default_settings_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    output_format = settings.output_format if settings.output_format in OUTPUT_FORMATS else "text"
    log_level = settings.log_level if settings.log_level in LOG_LEVELS else "INFO"
    payload = {
        "nmax": clamp_nmax(settings.nmax),
        "output_format": output_format,
        "scan_jobs": max(1, int(settings.scan_jobs)),
        "log_level": log_level,
    }
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
