from __future__ import annotations

import json
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from .artinian import DEFAULT_NMAX, LocalIdeal, colon, linear_rank, local_length, maximal_ideal, mu, socle_ideal, stabilized_quotient
from .decider import AGVerdict, decide, socle_rees_type
from .eagon_northcott import build_en_complex, canonical_presentation, cokernel_fiber, verify_complex
from .errors import HypothesisError, InputError, InternalInconsistencyError, ReesAGError
from .export import write_scan_workbook
from .instance import InstanceSpec, parse_local_generators
from .localideal import classify_parameter_ideal
from .oracle import CheckReport, Instance, example_family, monomial_sweep, near_monomial_sweep, run_suite, summarize
from .polyring import format_monomial


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3

COMMANDS = ("socle", "length", "colon", "mu", "type", "en-complex", "decide", "verify", "scan")
IDENTIFIER_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
N_RANGE_PATTERN = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")
NAMED_FAMILIES: dict[str, Callable[[], list[Instance]]] = {
    "example": example_family,
    "monomial": monomial_sweep,
    "near-monomial": near_monomial_sweep,
}


@dataclass
class CommandOptions:
    nmax: int = DEFAULT_NMAX
    output_format: str = "text"
    mode: str = "graded"
    kind: str = "socle"
    r: int | None = None
    family: str | None = None
    n_range: tuple[int, int] | None = None
    jobs: int = 1
    xlsx: Path | None = None
    divisor: list[str] | None = None


@dataclass
class CommandResult:
    payload: Any
    text: str
    json_lines: list[dict[str, Any]] = field(default_factory=list)

    def render(self, output_format: str) -> str:
        if output_format != "json":
            return self.text
        if self.json_lines:
            return "\n".join(json.dumps(line, sort_keys=True) for line in self.json_lines)
        return json.dumps(self.payload, indent=2)


def parse_n_range(text: str) -> tuple[int, int]:
    match = N_RANGE_PATTERN.match(text or "")
    if not match:
        raise InputError(f"--n expects LO..HI, got {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise InputError(f"--n range is empty: {text!r}")
    return lo, hi


def format_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[idx]) for row in cells) for idx in range(len(headers))]
    lines = []
    for pos, row in enumerate(cells):
        lines.append("  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip())
        if pos == 0:
            lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines)


def _strings(ideal: LocalIdeal) -> list[str]:
    return [str(g) for g in ideal.generators]


def _require(spec: InstanceSpec | None, command: str) -> InstanceSpec:
    if spec is None:
        raise InputError(f"{command}: --input is required")
    return spec


def cmd_socle(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    q = spec.ideal()
    socle = socle_ideal(q, options.nmax)
    payload = {
        "Q": _strings(q),
        "I": _strings(socle),
        "length_Q": local_length(q, options.nmax),
        "length_I": local_length(socle, options.nmax),
    }
    rows = [("Q", str(q)), ("I = Q : m", str(socle)), ("length R/Q", payload["length_Q"]), ("length R/I", payload["length_I"])]
    return CommandResult(payload, format_table(["quantity", "value"], rows))


def cmd_length(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    ideal = spec.ideal()
    quotient = stabilized_quotient(ideal, options.nmax)
    names = ideal.ring.variables
    basis = [format_monomial(m, names) or "1" for m in quotient.basis]
    payload = {"ideal": _strings(ideal), "length": quotient.length, "truncation": quotient.N, "basis": basis}
    rows = [("ideal", str(ideal)), ("length", quotient.length), ("truncation N", quotient.N), ("basis", ", ".join(basis))]
    return CommandResult(payload, format_table(["quantity", "value"], rows))


def cmd_colon(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    a = spec.ideal()
    if options.divisor:
        b = LocalIdeal(a.ring, tuple(parse_local_generators(options.divisor, a.ring, source="divisor")))
    else:
        b = maximal_ideal(a.ring)
    result = colon(a, b, options.nmax)
    unit = result.is_unit()
    payload = {"A": _strings(a), "B": _strings(b), "colon": _strings(result), "unit_ideal": unit}
    rows = [("A", str(a)), ("B", str(b)), ("A : B", "(1)" if unit else str(result))]
    return CommandResult(payload, format_table(["quantity", "value"], rows))


def cmd_mu(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    ideal = spec.ideal()
    payload = {"ideal": _strings(ideal), "mu": mu(ideal, options.nmax), "linear_rank": linear_rank(ideal)}
    rows = [("ideal", str(ideal)), ("mu", payload["mu"]), ("linear rank", payload["linear_rank"])]
    return CommandResult(payload, format_table(["quantity", "value"], rows))


def cmd_type(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    data = classify_parameter_ideal(spec.polynomials(), spec.ring(), options.nmax)
    if options.kind == "parameter":
        if data.r < 2:
            raise HypothesisError("type: needs at least two parameters")
        value = 1 if data.r == 2 else canonical_presentation(data.r, list(data.generators)).type
        formula = "r - 1 from the canonical presentation" if data.r >= 3 else "hypersurface"
    else:
        value = socle_rees_type(data, options.nmax)
        formula = "(d - 2) + mu(J / I)"
    payload = {"Q": _strings(data.q), "kind": options.kind, "type": value, "formula": formula, "warnings": data.warnings}
    rows = [("Q", str(data.q)), ("kind", options.kind), ("type", value), ("formula", formula)]
    return CommandResult(payload, format_table(["quantity", "value"], rows))


def _matrix_strings(matrix: Sequence[Sequence[object]]) -> list[list[str]]:
    return [[str(entry) for entry in row] for row in matrix]


def cmd_en_complex(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    a = spec.polynomials()
    r = options.r if options.r is not None else len(a)
    if len(a) != r:
        raise InputError(f"en-complex: --r {r} but the instance lists {len(a)} parameters")
    complex_ = build_en_complex(r, a)
    report = verify_complex(complex_)
    differentials = []
    for n, gmap in enumerate(complex_.maps, start=1):
        rows, cols = gmap.shape
        differentials.append(
            {
                "n": n,
                "rows": rows,
                "cols": cols,
                "source_shifts": list(gmap.source.shifts),
                "target_shifts": list(gmap.target.shifts),
                "matrix": _matrix_strings(gmap.matrix),
            }
        )
    payload: dict[str, Any] = {
        "r": r,
        "ranks": [module.rank for module in complex_.modules],
        "differentials": differentials,
        "tM": _matrix_strings(complex_.tM),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
        "passed": report.passed,
    }
    lines = [f"r = {r}, ranks C_0..C_{r - 1} = {payload['ranks']}"]
    for item in differentials:
        lines.append(f"d{item['n']}: {item['rows']} x {item['cols']}")
        lines.append(format_table([f"col {c}" for c in range(item["cols"])], item["matrix"]))
    if r >= 3:
        presentation = canonical_presentation(r, a)
        fiber = cokernel_fiber(r, a)
        payload["presentation"] = {
            "generator_degrees": list(presentation.generator_degrees),
            "relation_degrees": list(presentation.relation_degrees),
            "type": presentation.type,
        }
        payload["cokernel_fiber"] = [{"shift": shift, "generators": [str(g) for g in gens]} for shift, gens in fiber]
        lines.append(f"canonical module: generators in degrees {list(presentation.generator_degrees)}, type {presentation.type}")
    lines.append(format_table(["check", "result"], [(c.name, "pass" if c.passed else "FAIL") for c in report.checks]))
    return CommandResult(payload, "\n".join(lines))


def _verdict_text(q: LocalIdeal, verdict: AGVerdict) -> str:
    rows: list[tuple[str, object]] = [("Q", str(q)), ("status", verdict.status), ("mode", verdict.mode), ("rule", verdict.rule)]
    rows += [(name, value) for name, value in verdict.facts]
    rows += [("warning", message) for message in verdict.warnings]
    return format_table(["field", "value"], rows)


def cmd_decide(spec: InstanceSpec, options: CommandOptions) -> CommandResult:
    data = classify_parameter_ideal(spec.polynomials(), spec.ring(), options.nmax)
    verdict = decide(data, options.kind, options.mode, options.nmax, spec.split_i)
    payload = {"Q": _strings(data.q), "kind": options.kind, **verdict.to_dict()}
    return CommandResult(payload, _verdict_text(data.q, verdict))


def family_variables(pattern: str) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for name in IDENTIFIER_PATTERN.findall(pattern):
        if name != "n":
            seen.setdefault(name, None)
    if not seen:
        raise InputError(f"family {pattern!r} names no variables")
    return tuple(seen)


def family_instances(pattern: str, n_range: tuple[int, int], variables: Sequence[str] | None = None, characteristic: int = 0) -> list[tuple[int, Instance]]:
    names = tuple(variables) if variables else family_variables(pattern)
    pieces = [piece.strip() for piece in pattern.split(",") if piece.strip()]
    if not pieces:
        raise InputError("family pattern lists no generators")
    lo, hi = n_range
    result = []
    for n in range(lo, hi + 1):
        gens = tuple(re.sub(r"\bn\b", str(n), piece) for piece in pieces)
        result.append((n, Instance("(" + ", ".join(gens) + ")", names, gens, characteristic)))
    return result


def _scan_row(job: tuple[int, Instance, str, str, int]) -> dict[str, Any]:
    n, instance, kind, mode, nmax = job
    row: dict[str, Any] = {"n": n, "Q": instance.label}
    try:
        ring = instance.ring
        data = classify_parameter_ideal(parse_local_generators(instance.generators, ring), ring, nmax)
        verdict = decide(data, kind, mode, nmax)
    except (HypothesisError, InternalInconsistencyError) as exc:
        row.update({"status": "Error", "rule": "", "type": None, "message": str(exc)})
        return row
    row.update({"status": verdict.status, "rule": verdict.rule, "type": verdict.fact("type"), "message": "; ".join(verdict.warnings)})
    return row


def cmd_scan(spec: InstanceSpec | None, options: CommandOptions) -> CommandResult:
    if not options.family or options.n_range is None:
        raise InputError("scan: --family and --n are required")
    variables = spec.variables if spec else None
    characteristic = spec.characteristic if spec else 0
    jobs = [(n, inst, options.kind, options.mode, options.nmax) for n, inst in family_instances(options.family, options.n_range, variables, characteristic)]
    if options.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            rows = list(pool.map(_scan_row, jobs))
    else:
        rows = [_scan_row(job) for job in jobs]
    headers = ["n", "Q", "status", "rule", "type"]
    table = [[row[h] if row[h] is not None else "" for h in headers] for row in rows]
    if options.xlsx:
        write_scan_workbook(options.xlsx, headers + ["message"], [t + [row["message"]] for t, row in zip(table, rows)])
        logger.info("scan table written to %s", options.xlsx)
    payload = {"family": options.family, "kind": options.kind, "mode": options.mode, "rows": rows}
    return CommandResult(payload, format_table(headers, table))


def _verify_instances(spec: InstanceSpec | None, options: CommandOptions) -> list[Instance]:
    if options.family:
        named = NAMED_FAMILIES.get(options.family)
        if named is not None:
            return named()
        if options.n_range is None:
            raise InputError(f"verify: family {options.family!r} is not a named family; pass --n LO..HI")
        variables = spec.variables if spec else None
        characteristic = spec.characteristic if spec else 0
        return [inst for _, inst in family_instances(options.family, options.n_range, variables, characteristic)]
    return [_require(spec, "verify").to_oracle_instance()]


def cmd_verify(spec: InstanceSpec | None, options: CommandOptions) -> CommandResult:
    instances = _verify_instances(spec, options)
    reports: list[CheckReport] = run_suite(instances, nmax=options.nmax, jobs=options.jobs)
    counts = summarize(reports)
    rows = [(r.inputs["label"], r.name, r.status, r.expected if r.status != "skip" else "", r.computed if r.status != "skip" else "") for r in reports]
    text = format_table(["instance", "identity", "status", "expected", "computed"], rows)
    text += f"\n\npass={counts['pass']} fail={counts['fail']} skip={counts['skip']}"
    return CommandResult({"reports": [r.to_dict() for r in reports], "summary": counts}, text, [r.to_dict() for r in reports])


HANDLERS: dict[str, Callable[[InstanceSpec, CommandOptions], CommandResult]] = {
    "socle": cmd_socle,
    "length": cmd_length,
    "colon": cmd_colon,
    "mu": cmd_mu,
    "type": cmd_type,
    "en-complex": cmd_en_complex,
    "decide": cmd_decide,
}


def run_command(command: str, spec: InstanceSpec | None, options: CommandOptions) -> CommandResult:
    if command == "scan":
        return cmd_scan(spec, options)
    if command == "verify":
        return cmd_verify(spec, options)
    handler = HANDLERS.get(command)
    if handler is None:
        raise InputError(f"Unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    return handler(_require(spec, command), options)


def cmd_dispatch(command: str, spec: InstanceSpec | None, options: CommandOptions) -> tuple[int, str]:
    try:
        result = run_command(command, spec, options)
    except InputError as exc:
        logger.error("%s: invalid input: %s", command, exc)
        return EXIT_INPUT, f"error: {exc}"
    except ReesAGError as exc:
        logger.error("%s: %s", command, exc)
        return EXIT_HYPOTHESIS, f"error: {exc}"
    return EXIT_OK, result.render(options.output_format)
