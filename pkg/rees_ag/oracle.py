from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Any, Callable, Iterable, Sequence

from .artinian import (
    DEFAULT_NMAX,
    LocalIdeal,
    colon,
    contains_ideal,
    ideal_equal,
    ideal_product,
    ideal_sum,
    linear_rank,
    local_length,
    maximal_ideal,
    mu,
    mu_subquotient,
    power_of_maximal,
    socle_ideal,
)
from .errors import HypothesisError, InputError, InternalInconsistencyError
from .expr_parser import parse_generators
from .localideal import classify_parameter_ideal, delta_construction, detect_split, has_split_shape, reduction_check
from .polyring import RingDescriptor


logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass(frozen=True)
class Instance:
    label: str
    variables: tuple[str, ...]
    generators: tuple[str, ...]
    characteristic: int = 0
    split_i: int | None = None

    @property
    def ring(self) -> RingDescriptor:
        return RingDescriptor(self.variables, self.characteristic)

    def ideal(self) -> LocalIdeal:
        ring = self.ring
        return LocalIdeal(ring, tuple(parse_generators(self.generators, ring)))


@dataclass
class CheckReport:
    name: str
    inputs: dict[str, Any]
    expected: Any
    provenance: str
    computed: Any
    status: str
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "expected": self.expected,
            "provenance": self.provenance,
            "computed": self.computed,
            "status": self.status,
            "reason": self.reason,
        }


@dataclass
class _Context:
    instance: Instance
    nmax: int
    q: LocalIdeal = field(init=False)
    _socle: LocalIdeal | None = field(init=False, default=None)

    def __post_init__(self) -> None:
        self.q = self.instance.ideal()

    @property
    def ring(self) -> RingDescriptor:
        return self.q.ring

    @property
    def d(self) -> int:
        return self.ring.d

    @property
    def m(self) -> LocalIdeal:
        return maximal_ideal(self.ring)

    def require_full(self) -> None:
        classify_parameter_ideal(list(self.q.generators), self.ring, self.nmax)
        if len(self.q) != self.d:
            raise HypothesisError("needs a full parameter ideal")
        if local_length(self.q, self.nmax) <= 1:
            raise HypothesisError("needs Q != m")

    def require_q_in_m_squared(self) -> None:
        self.require_full()
        if linear_rank(self.q) != 0:
            raise HypothesisError("needs Q inside m^2")

    def split(self) -> int:
        self.require_full()
        split_i = self.instance.split_i
        if split_i is None:
            split_i = detect_split(self.q)
        elif not has_split_shape(self.q.generators, split_i):
            raise HypothesisError(f"generators are not in split shape for i = {split_i}")
        if split_i is None:
            raise HypothesisError("no split shape (x_1..x_i, a_j in b^2) found")
        return split_i

    def socle(self) -> LocalIdeal:
        if self._socle is None:
            self._socle = socle_ideal(self.q, self.nmax)
        return self._socle


# Each identity returns (expected, computed, provenance) or raises HypothesisError to be skipped.
Identity = Callable[[_Context], tuple[Any, Any, str]]


def _lemma_mu_q(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.require_q_in_m_squared()
    return ctx.d * ctx.d, mu(ideal_product(ctx.m, ctx.q), ctx.nmax), "mu(mQ) = d * mu(m) = d^2 when Q lies in m^2"


def _prop_mu_mq_i2(ctx: _Context) -> tuple[Any, Any, str]:
    i = ctx.split()
    socle = ctx.socle()
    computed = mu_subquotient(ideal_product(ctx.m, ctx.q), ideal_product(socle, socle), ctx.nmax)
    return ctx.d * (ctx.d - i), computed, "mu(mQ / I^2) = d(d - i) in split shape"


def _duality(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.require_full()
    double = colon(ctx.q, ctx.socle(), ctx.nmax)
    return True, ideal_equal(double, ctx.m, ctx.nmax), "Q : (Q : m) = m over a Gorenstein base"


def _length_step(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.require_full()
    return local_length(ctx.q, ctx.nmax) - 1, local_length(ctx.socle(), ctx.nmax), "l(R/Q) = l(R/(Q : m)) + 1"


def _mu_i_q_in_m2(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.require_q_in_m_squared()
    return ctx.d + 1, mu(ctx.socle(), ctx.nmax), "mu(Q : m) = d + 1 when Q lies in m^2"


def _reduction(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.split()
    return True, reduction_check(ctx.socle(), ctx.q, ctx.nmax), "I^2 = QI for I = Q : m in split shape"


def _setting_colon(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.split()
    return True, ideal_equal(colon(ctx.q, ctx.socle(), ctx.nmax), ctx.m, ctx.nmax), "Q : I = m in split shape"


def _setting_mu_m_mod_i(ctx: _Context) -> tuple[Any, Any, str]:
    i = ctx.split()
    return ctx.d - i, mu_subquotient(ctx.m, ctx.socle(), ctx.nmax), "mu(m / I) = d - i in split shape"


def _setting_type(ctx: _Context) -> tuple[Any, Any, str]:
    i = ctx.split()
    socle = ctx.socle()
    j = colon(ctx.q, socle, ctx.nmax)
    computed = (ctx.d - 2) + mu_subquotient(j, socle, ctx.nmax)
    return 2 * ctx.d - (i + 2), computed, "(d - 2) + mu(J / I) = 2d - (i + 2) in split shape"


def _setting_mu_i_plus_m2(ctx: _Context) -> tuple[Any, Any, str]:
    i = ctx.split()
    computed = mu(ideal_sum(ctx.socle(), power_of_maximal(ctx.ring, 2)), ctx.nmax)
    return i + comb(ctx.d - i + 1, 2), computed, "mu(I + m^2) = i + binom(d - i + 1, 2) in split shape"


def _setting_i_in_a_plus_b2(ctx: _Context) -> tuple[Any, Any, str]:
    i = ctx.split()
    variables = ctx.ring.gens()
    a_part = LocalIdeal(ctx.ring, tuple(variables[:i]))
    b_part = LocalIdeal(ctx.ring, tuple(variables[i:]))
    target = ideal_sum(a_part, ideal_product(b_part, b_part))
    return True, contains_ideal(target, ctx.socle(), ctx.nmax), "I lies in a + b^2 in split shape"


def _delta_socle(ctx: _Context) -> tuple[Any, Any, str]:
    i = ctx.split()
    data = classify_parameter_ideal(list(ctx.q.generators), ctx.ring, ctx.nmax)
    try:
        delta = delta_construction(data, i, ctx.nmax).delta
    except InternalInconsistencyError as exc:
        logger.warning("delta construction disagreed for %s: %s", ctx.q, exc)
        return True, False, "Q + (Delta) = Q : m and Q : Delta = m"
    via_delta = ideal_sum(ctx.q, LocalIdeal(ctx.ring, (delta,)))
    same_socle = ideal_equal(via_delta, colon(ctx.q, ctx.m, ctx.nmax), ctx.nmax)
    delta_colon = ideal_equal(colon(ctx.q, LocalIdeal(ctx.ring, (delta,)), ctx.nmax), ctx.m, ctx.nmax)
    return True, same_socle and delta_colon, "Q + (Delta) = Q : m and Q : Delta = m"


def _integrally_closed_socle(ctx: _Context) -> tuple[Any, Any, str]:
    ctx.require_full()
    variables = ctx.ring.gens()
    gens = ctx.q.generators
    if any(gens[k] != variables[k] for k in range(ctx.d - 1)):
        raise HypothesisError("needs Q = (x_1, .., x_{d-1}, x_d^q)")
    last = gens[-1]
    mono = next(iter(last.terms)) if last.is_monomial() else None
    if mono is None or any(mono[:-1]) or mono[-1] < 2 or last.leading_coefficient() != 1:
        raise HypothesisError("needs Q = (x_1, .., x_{d-1}, x_d^q) with q >= 2")
    expected_ideal = LocalIdeal(ctx.ring, tuple(variables[:-1]) + (variables[-1] ** (mono[-1] - 1),))
    return True, ideal_equal(ctx.socle(), expected_ideal, ctx.nmax), "Q : m = (x_1, .., x_{d-1}, x_d^(q-1))"


IDENTITIES: dict[str, Identity] = {
    "lemma_muQ": _lemma_mu_q,
    "prop_muMQI2": _prop_mu_mq_i2,
    "duality": _duality,
    "length_step": _length_step,
    "mu_I_q_in_m2": _mu_i_q_in_m2,
    "reduction": _reduction,
    "setting_colon": _setting_colon,
    "setting_mu_m_mod_I": _setting_mu_m_mod_i,
    "setting_type": _setting_type,
    "setting_mu_I_plus_m2": _setting_mu_i_plus_m2,
    "setting_I_in_a_plus_b2": _setting_i_in_a_plus_b2,
    "delta_socle": _delta_socle,
    "integrally_closed_socle": _integrally_closed_socle,
}


def _inputs(instance: Instance) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "label": instance.label,
        "vars": list(instance.variables),
        "gens": list(instance.generators),
    }
    if instance.characteristic:
        payload["field"] = {"Fp": instance.characteristic}
    if instance.split_i is not None:
        payload["split_i"] = instance.split_i
    return payload


def verify_identity(name: str, instance: Instance, nmax: int = DEFAULT_NMAX) -> CheckReport:
    identity = IDENTITIES.get(name)
    if identity is None:
        raise InputError(f"verify_identity: unknown identity {name!r}; known: {sorted(IDENTITIES)}")
    inputs = _inputs(instance)
    try:
        expected, computed, provenance = identity(_Context(instance, nmax))
    except HypothesisError as exc:
        return CheckReport(name, inputs, None, "", None, SKIP, reason=str(exc))
    status = PASS if expected == computed else FAIL
    if status == FAIL:
        logger.warning("identity %s failed on %s: expected %r, computed %r", name, instance.label, expected, computed)
    return CheckReport(name, inputs, expected, provenance, computed, status)


def check_instance(instance: Instance, names: Sequence[str] | None = None, nmax: int = DEFAULT_NMAX) -> list[CheckReport]:
    return [verify_identity(name, instance, nmax) for name in (names or list(IDENTITIES))]


def _check_instance_job(job: tuple[Instance, tuple[str, ...] | None, int]) -> list[CheckReport]:
    instance, names, nmax = job
    return check_instance(instance, names, nmax)


def run_suite(
    instances: Iterable[Instance],
    names: Sequence[str] | None = None,
    nmax: int = DEFAULT_NMAX,
    jobs: int = 1,
) -> list[CheckReport]:
    jobs_list = [(instance, tuple(names) if names else None, nmax) for instance in instances]
    if jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_check_instance_job, jobs_list))
    else:
        batches = [_check_instance_job(job) for job in jobs_list]
    reports = [report for batch in batches for report in batch]
    counts = summarize(reports)
    logger.info("suite finished: %d instances, %s", len(jobs_list), counts)
    return reports


def summarize(reports: Iterable[CheckReport]) -> dict[str, int]:
    counts = {PASS: 0, FAIL: 0, SKIP: 0}
    for report in reports:
        counts[report.status] += 1
    counts["total"] = sum(counts.values())
    return counts


def example_family(lo: int = 2, hi: int = 6) -> list[Instance]:
    return [Instance(f"(x, y^2, z^{n})", ("x", "y", "z"), ("x", "y^2", f"z^{n}"), split_i=1) for n in range(lo, hi + 1)]


def monomial_sweep(variables: Sequence[str] = ("x", "y", "z"), max_exponent: int = 3) -> list[Instance]:
    instances = []
    for exps in product(range(1, max_exponent + 1), repeat=len(variables)):
        if all(e == 1 for e in exps):
            continue
        gens = tuple(v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exps))
        instances.append(Instance("(" + ", ".join(gens) + ")", tuple(variables), gens))
    return instances


NEAR_MONOMIAL = (
    (("x", "y", "z"), ("x", "y^2 + z^3", "z^2"), 1),
    (("x", "y", "z"), ("x", "y^2 + y*z^2", "z^3"), 1),
    (("x", "y", "z"), ("x", "y^3 + z^2", "z^3"), 1),
    (("x", "y", "z"), ("x^2 + y*z", "y^2", "z^2"), 0),
    (("x", "y", "z"), ("x^2", "y^2 + x*z", "z^2"), 0),
    (("x", "y", "z", "w"), ("x", "y", "z^2 + w^3", "w^2"), 2),
    (("x", "y", "z", "w"), ("x", "y^2 + z^2", "z^2 + w^2", "w^2"), 1),
    (("x", "y", "z", "w"), ("x", "y^2", "z^2", "w^2"), 1),
    (("x", "y", "z", "w"), ("x", "y", "z^2", "w^2"), 2),
    (("x", "y", "z", "w"), ("x^2", "y^2", "z^2", "w^2"), 0),
)


def near_monomial_sweep() -> list[Instance]:
    return [
        Instance("(" + ", ".join(gens) + ")", variables, gens, split_i=split_i)
        for variables, gens, split_i in NEAR_MONOMIAL
    ]
