from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .commands import COMMANDS, EXIT_INPUT, CommandOptions, cmd_dispatch, parse_n_range
from .errors import InputError
from .instance import InstanceSpec, load_instance
from .settings_store import apply_env_overrides, clamp_nmax, default_log_dir, load_settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rees_ag",
        description="Rees AG - almost Gorenstein decisions for Rees algebras of parameter and socle ideals",
    )
    parser.add_argument("--version", action="version", version=f"Rees AG {__version__}")
    parser.add_argument("command", choices=COMMANDS, help="Operation to run")
    parser.add_argument("--input", default=None, help="Instance JSON file")
    parser.add_argument("--format", choices=["text", "json"], default=None, help="Output format")
    parser.add_argument("--nmax", type=int, default=None, help="Truncation cap for Artinian quotients")
    parser.add_argument("--mode", choices=["graded", "local"], default="graded")
    parser.add_argument("--kind", choices=["parameter", "socle"], default="socle")
    parser.add_argument("--r", type=int, default=None, help="Number of parameters for en-complex")
    parser.add_argument("--family", default=None, help='Generator pattern in n, e.g. "x,y^2,z^n", or a named family')
    parser.add_argument("--n", dest="n_range", default=None, help="Parameter range LO..HI for --family")
    parser.add_argument("--divisor", default=None, help="Comma separated generators of the divisor ideal for colon")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for scan and verify")
    parser.add_argument("--xlsx", default=None, help="Write the scan table to this workbook")
    parser.add_argument("--settings", default=None, help="Settings JSON path")
    return parser


def configure_logging(level: str = "INFO") -> None:
    log_dir = default_log_dir()
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        handler: logging.Handler = logging.FileHandler(log_dir / "rees_ag.log", encoding="utf-8")
    except OSError:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.WARNING)
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s - %(message)s",
        handlers=[handler],
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()
    settings = apply_env_overrides(load_settings(Path(args.settings) if args.settings else None))
    logging.getLogger().setLevel(getattr(logging, settings.log_level, logging.INFO))
    options = CommandOptions(
        nmax=clamp_nmax(args.nmax) if args.nmax is not None else settings.nmax,
        output_format=args.format or settings.output_format,
        mode=args.mode,
        kind=args.kind,
        r=args.r,
        family=args.family,
        jobs=max(1, args.jobs) if args.jobs is not None else settings.scan_jobs,
        xlsx=Path(args.xlsx) if args.xlsx else None,
        divisor=[piece.strip() for piece in args.divisor.split(",") if piece.strip()] if args.divisor else None,
    )
    try:
        if args.n_range is not None:
            options.n_range = parse_n_range(args.n_range)
        spec: InstanceSpec | None = load_instance(Path(args.input)) if args.input else None
    except InputError as exc:
        logging.getLogger(__name__).error("invalid input: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code, output = cmd_dispatch(args.command, spec, options)
    if code == 0:
        print(output)
    else:
        print(output, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
