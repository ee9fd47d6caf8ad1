from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from .artinian import (
    DEFAULT_NMAX,
    LocalIdeal,
    colon,
    contains_ideal,
    ideal_equal,
    linear_rank,
    local_length,
    maximal_ideal,
    mu,
    mu_subquotient,
    power_of_maximal,
    socle_ideal,
)
from .eagon_northcott import ACYCLICITY_NOTE, canonical_presentation, cokernel_fiber
from .errors import HypothesisError, InputError
from .localideal import ParameterIdealData, detect_split, has_split_shape, reduction_check


logger = logging.getLogger(__name__)

GORENSTEIN = "Gorenstein"
AG_PROPER = "AlmostGorensteinProper"
NOT_AG = "NotAlmostGorenstein"
UNKNOWN = "Unknown"
ALMOST_GORENSTEIN = {GORENSTEIN, AG_PROPER}

GRADED = "graded"
LOCAL = "local"

BASE_RING_NOTE = "regular local ring (power series model k[[x_1..x_d]])"


@dataclass
class AGVerdict:
    status: str
    mode: str
    rule: str
    facts: list[tuple[str, Any]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def fact(self, name: str, default: Any = None) -> Any:
        for key, value in self.facts:
            if key == name:
                return value
        return default

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "mode": self.mode,
            "rule": self.rule,
            "facts": [{"name": key, "value": value} for key, value in self.facts],
            "warnings": list(self.warnings),
        }


def _require_r_at_least_two(data: ParameterIdealData, operation: str) -> None:
    if data.r < 2:
        raise HypothesisError(f"{operation}: needs at least two parameters, got r = {data.r}")


def _parameter_facts(data: ParameterIdealData) -> list[tuple[str, Any]]:
    return [
        ("r", data.r),
        ("d", data.d),
        ("linear_rank", data.linear_rank),
        ("sop_status", data.sop_status),
        ("base_ring", BASE_RING_NOTE),
        ("acyclicity", ACYCLICITY_NOTE),
    ]


def _presentation_facts(data: ParameterIdealData) -> list[tuple[str, Any]]:
    presentation = canonical_presentation(data.r, list(data.generators))
    fiber = cokernel_fiber(data.r, list(data.generators))
    return [
        ("type", presentation.type),
        ("canonical_generator_degrees", list(presentation.generator_degrees)),
        ("cokernel_generators", len(fiber)),
    ]


def decide_parameter_graded(data: ParameterIdealData, nmax: int = DEFAULT_NMAX) -> AGVerdict:
    _require_r_at_least_two(data, "decide_parameter_graded")
    facts = _parameter_facts(data)
    if data.r == 2:
        verdict = AGVerdict(GORENSTEIN, GRADED, "parameter_hypersurface", facts + [("type", 1)], list(data.warnings))
    else:
        facts += _presentation_facts(data)
        if data.linear_rank == data.r:
            verdict = AGVerdict(AG_PROPER, GRADED, "parameter_regular_sop", facts, list(data.warnings))
        else:
            verdict = AGVerdict(NOT_AG, GRADED, "parameter_not_regular_sop", facts, list(data.warnings))
    logger.info("graded parameter verdict for %s: %s (%s)", data.q, verdict.status, verdict.rule)
    return verdict


def decide_parameter_local(data: ParameterIdealData, nmax: int = DEFAULT_NMAX) -> AGVerdict:
    _require_r_at_least_two(data, "decide_parameter_local")
    facts = _parameter_facts(data)
    if data.r == 2:
        verdict = AGVerdict(GORENSTEIN, LOCAL, "parameter_hypersurface", facts + [("type", 1)], list(data.warnings))
    else:
        facts += _presentation_facts(data)
        verdict = AGVerdict(AG_PROPER, LOCAL, "parameter_local_regular_base", facts, list(data.warnings))
    logger.info("local parameter verdict for %s: %s (%s)", data.q, verdict.status, verdict.rule)
    return verdict


def _require_socle_hypotheses(data: ParameterIdealData, operation: str, nmax: int) -> None:
    if not data.full:
        raise HypothesisError(f"{operation}: Q must be a full parameter ideal (r = d)")
    if local_length(data.q, nmax) <= 1:
        raise HypothesisError(f"{operation}: hypothesis Q != m fails")


def socle_rees_type(data: ParameterIdealData, nmax: int = DEFAULT_NMAX) -> int:
    if data.d < 3:
        raise HypothesisError(f"socle_rees_type: needs d >= 3, got d = {data.d}")
    _require_socle_hypotheses(data, "socle_rees_type", nmax)
    socle = socle_ideal(data.q, nmax)
    if not reduction_check(socle, data.q, nmax):
        raise HypothesisError(f"socle_rees_type: hypothesis I^2 = QI fails for Q = {data.q}")
    j = colon(data.q, socle, nmax)
    return (data.d - 2) + mu_subquotient(j, socle, nmax)


def _check_split(data: ParameterIdealData, split_i: int) -> None:
    if not has_split_shape(data.generators, split_i):
        raise HypothesisError(
            f"split_i = {split_i} does not match Q = {data.q}: expected x_1..x_i followed by elements of b^2"
        )


def _socle_facts(data: ParameterIdealData, socle: LocalIdeal, nmax: int) -> list[tuple[str, Any]]:
    return [
        ("d", data.d),
        ("linear_rank_Q", data.linear_rank),
        ("length_R/Q", local_length(data.q, nmax)),
        ("length_R/I", local_length(socle, nmax)),
        ("I", str(socle)),
        ("base_ring", BASE_RING_NOTE),
    ]


def decide_socle_graded(data: ParameterIdealData, nmax: int = DEFAULT_NMAX, split_i: int | None = None) -> AGVerdict:
    warnings = list(data.warnings)
    if data.d <= 2:
        return AGVerdict(UNKNOWN, GRADED, "no_rule", [("d", data.d)], warnings + ["socle case in dimension <= 2 is not covered"])
    _require_socle_hypotheses(data, "decide_socle_graded", nmax)
    if split_i is not None:
        _check_split(data, split_i)
    ring = data.ring
    socle = socle_ideal(data.q, nmax)
    facts = _socle_facts(data, socle, nmax)

    if ideal_equal(socle, maximal_ideal(ring), nmax):
        facts += [("I_equals_m", True), ("reduction_I2_QI", False), ("type", data.d - 1)]
        verdict = AGVerdict(AG_PROPER, GRADED, "socle_maximal_ideal", facts, warnings)
        logger.info("graded socle verdict for %s: %s (%s)", data.q, verdict.status, verdict.rule)
        return verdict

    reduction = reduction_check(socle, data.q, nmax)
    facts.append(("reduction_I2_QI", reduction))
    type_value: int | None = None
    if reduction:
        j = colon(data.q, socle, nmax)
        type_value = (data.d - 2) + mu_subquotient(j, socle, nmax)
        facts += [("J", str(j)), ("J_equals_m", ideal_equal(j, maximal_ideal(ring), nmax)), ("type", type_value)]
        if split_i is None:
            split_i = detect_split(data.q)
        if split_i is not None:
            facts += [("split_i", split_i), ("setting_type_closed_form", 2 * data.d - (split_i + 2))]

    m_squared_inside = contains_ideal(socle, power_of_maximal(ring, 2), nmax)
    rank_i = linear_rank(socle)
    facts += [("m2_in_I", m_squared_inside), ("linear_rank_I", rank_i)]
    if data.d == 3 and m_squared_inside and rank_i == 1:
        if type_value is None:
            verdict = AGVerdict(UNKNOWN, GRADED, "no_rule", facts, warnings + ["I = (x) + m^2 but I^2 = QI fails; type unavailable"])
        else:
            status = GORENSTEIN if type_value == 1 else AG_PROPER
            verdict = AGVerdict(status, GRADED, "socle_x_plus_m_squared", facts, warnings)
    else:
        verdict = AGVerdict(NOT_AG, GRADED, "socle_not_x_plus_m_squared", facts, warnings)
    logger.info("graded socle verdict for %s: %s (%s)", data.q, verdict.status, verdict.rule)
    return verdict


def decide_socle_local(data: ParameterIdealData, nmax: int = DEFAULT_NMAX, split_i: int | None = None) -> AGVerdict:
    warnings = list(data.warnings)
    if data.d <= 2:
        return AGVerdict(UNKNOWN, LOCAL, "no_rule", [("d", data.d)], warnings + ["socle case in dimension <= 2 is not covered"])
    _require_socle_hypotheses(data, "decide_socle_local", nmax)
    if split_i is not None:
        _check_split(data, split_i)
    if data.linear_rank == 0:
        facts = [("d", data.d), ("linear_rank_Q", 0), ("Q_in_m2", True), ("base_ring", BASE_RING_NOTE)]
        verdict = AGVerdict(NOT_AG, LOCAL, "socle_q_in_m_squared", facts, warnings)
    else:
        graded = decide_socle_graded(data, nmax, split_i)
        facts = list(graded.facts) + [("graded_status", graded.status), ("graded_rule", graded.rule)]
        if graded.status in ALMOST_GORENSTEIN:
            verdict = AGVerdict(graded.status, LOCAL, "socle_graded_promotion", facts, graded.warnings)
        elif graded.fact("reduction_I2_QI") is False and mu(socle_ideal(data.q, nmax), nmax) == data.d:
            # I is itself a parameter ideal with r = d >= 3
            facts = [(key, value) for key, value in facts if key != "type"] + [("mu_I", data.d), ("type", data.d - 1)]
            verdict = AGVerdict(AG_PROPER, LOCAL, "socle_parameter_ideal", facts, graded.warnings)
        else:
            verdict = AGVerdict(UNKNOWN, LOCAL, "no_rule", facts, graded.warnings)
    logger.info("local socle verdict for %s: %s (%s)", data.q, verdict.status, verdict.rule)
    return verdict


def decide(data: ParameterIdealData, kind: str, mode: str, nmax: int = DEFAULT_NMAX, split_i: int | None = None) -> AGVerdict:
    if kind == "parameter":
        return decide_parameter_graded(data, nmax) if mode == GRADED else decide_parameter_local(data, nmax)
    if kind == "socle":
        if mode == GRADED:
            return decide_socle_graded(data, nmax, split_i)
        return decide_socle_local(data, nmax, split_i)
    raise InputError(f"decide: unknown kind {kind!r}")
