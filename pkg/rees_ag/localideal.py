from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .artinian import (
    DEFAULT_NMAX,
    LocalIdeal,
    ideal_equal,
    ideal_product,
    ideal_sum,
    linear_rank,
    socle_ideal,
    stabilized_quotient,
)
from .errors import ContainmentError, HypothesisError, InputError, InternalInconsistencyError
from .polyring import Monomial, Polynomial, RingDescriptor, Scalar, det_exact


logger = logging.getLogger(__name__)

VERIFIED = "verified"
ASSERTED = "asserted"


@dataclass
class ParameterIdealData:
    q: LocalIdeal
    r: int
    full: bool
    sop_status: str
    linear_rank: int
    warnings: list[str] = field(default_factory=list)

    @property
    def ring(self) -> RingDescriptor:
        return self.q.ring

    @property
    def d(self) -> int:
        return self.q.ring.d

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.q.generators


@dataclass
class DeltaData:
    split_i: int
    a_ideal: LocalIdeal
    b_part: tuple[Polynomial, ...]
    alpha: tuple[tuple[Polynomial, ...], ...]
    delta: Polynomial
    socle: LocalIdeal


def monomial_height(gens: Sequence[Polynomial]) -> int:
    """Height of a monomial ideal: fewest variables meeting the support of every generator."""
    if not gens:
        return 0
    d = gens[0].ring.d
    supports = []
    for g in gens:
        if not g.is_monomial():
            raise InputError(f"monomial_height: {g} is not a monomial")
        (mono,) = g.terms
        supports.append({idx for idx, e in enumerate(mono) if e})
    if any(not s for s in supports):
        return d
    for size in range(1, d + 1):
        for chosen in combinations(range(d), size):
            picked = set(chosen)
            if all(s & picked for s in supports):
                return size
    return d


def classify_parameter_ideal(
    gens: Sequence[Polynomial], ring: RingDescriptor, nmax: int = DEFAULT_NMAX
) -> ParameterIdealData:
    r = len(gens)
    if r < 1:
        raise InputError("classify_parameter_ideal: at least one generator is required")
    for g in gens:
        if g.ring != ring:
            raise InputError(f"classify_parameter_ideal: generator {g} is not over the declared ring")
        if g.is_zero():
            raise HypothesisError("classify_parameter_ideal: the zero polynomial is not a parameter")
        if g.constant_term() != 0:
            raise InputError(f"classify_parameter_ideal: generator {g} has a nonzero constant term")
    if r > ring.d:
        raise HypothesisError(f"classify_parameter_ideal: {r} generators exceed the dimension d = {ring.d}")
    q = LocalIdeal(ring, tuple(gens))
    warnings: list[str] = []
    if r == ring.d:
        stabilized_quotient(q, nmax)
        status = VERIFIED
    elif all(g.is_monomial() for g in gens):
        height = monomial_height(gens)
        if height != r:
            raise HypothesisError(f"classify_parameter_ideal: {q} has height {height} < {r}; not a subsystem of parameters")
        status = VERIFIED
    else:
        status = ASSERTED
        message = f"subsystem of parameters {q} asserted, not verified"
        warnings.append(message)
        logger.warning(message)
    if ring.is_prime_field:
        message = f"finite residue field {ring.field_label}: results assume an infinite residue field"
        warnings.append(message)
        logger.warning(message)
    return ParameterIdealData(q=q, r=r, full=r == ring.d, sop_status=status, linear_rank=linear_rank(q), warnings=warnings)


def b_degree(mono: tuple[int, ...], split_i: int) -> int:
    return sum(mono[split_i:])


def in_b_squared(poly: Polynomial, split_i: int) -> bool:
    return all(b_degree(mono, split_i) >= 2 for mono in poly.terms)


def has_split_shape(gens: Sequence[Polynomial], split_i: int) -> bool:
    ring = gens[0].ring
    if not 0 <= split_i <= ring.d - 2 or len(gens) != ring.d:
        return False
    if any(gens[j] != ring.gens()[j] for j in range(split_i)):
        return False
    return all(in_b_squared(g, split_i) for g in gens[split_i:])


def detect_split(q: LocalIdeal) -> int | None:
    gens = q.generators
    d = q.ring.d
    if len(gens) != d:
        return None
    for i in range(d - 2, -1, -1):
        if has_split_shape(gens, i):
            return i
    return None


def split_coefficients(a: Polynomial, split_i: int) -> list[Polynomial]:
    """Write a in b^2 as sum_k alpha_k x_k over the b-variables, dividing each term by its first b-variable."""
    ring = a.ring
    d = ring.d
    columns: list[dict[Monomial, Scalar]] = [{} for _ in range(d - split_i)]
    for mono, coeff in a.terms.items():
        k = next(idx for idx in range(split_i, d) if mono[idx] > 0)
        cofactor = list(mono)
        cofactor[k] -= 1
        columns[k - split_i][tuple(cofactor)] = coeff
    return [Polynomial(ring, terms) for terms in columns]


def delta_construction(data: ParameterIdealData, split_i: int, nmax: int = DEFAULT_NMAX) -> DeltaData:
    ring = data.ring
    d = ring.d
    gens = data.generators
    if not data.full:
        raise HypothesisError("delta_construction: Q must be a full parameter ideal")
    if not 0 <= split_i <= d - 2:
        raise HypothesisError(f"delta_construction: split index i = {split_i} must satisfy 0 <= i <= d - 2 = {d - 2}")
    variables = ring.gens()
    for j in range(split_i):
        if gens[j] != variables[j]:
            raise HypothesisError(f"delta_construction: generator {j + 1} is {gens[j]}, expected {variables[j]}")
    b_part = tuple(gens[split_i:])
    for a in b_part:
        if not in_b_squared(a, split_i):
            raise HypothesisError(f"delta_construction: {a} does not lie in b^2 for i = {split_i}")
    alpha = tuple(tuple(split_coefficients(a, split_i)) for a in b_part)
    b_vars = variables[split_i:]
    for a, row in zip(b_part, alpha):
        recombined = ring.zero()
        for coeff, x in zip(row, b_vars):
            recombined = recombined + coeff * x
        if recombined != a:
            raise InternalInconsistencyError(f"delta_construction: splitting of {a} recombines to {recombined}")
    delta = det_exact(alpha)
    socle = ideal_sum(data.q, LocalIdeal(ring, (delta,)))
    if not ideal_equal(socle, socle_ideal(data.q, nmax), nmax):
        raise InternalInconsistencyError(f"delta_construction: Q + (Delta) with Delta = {delta} differs from Q : m")
    logger.debug("delta_construction: i=%d, Delta=%s", split_i, delta)
    return DeltaData(
        split_i=split_i,
        a_ideal=LocalIdeal(ring, tuple(variables[:split_i])),
        b_part=b_part,
        alpha=alpha,
        delta=delta,
        socle=socle,
    )


def reduction_check(i: LocalIdeal, q: LocalIdeal, nmax: int = DEFAULT_NMAX) -> bool:
    quotient = stabilized_quotient(i, nmax)
    for g in q.generators:
        if not quotient.contains(g):
            raise ContainmentError(f"reduction_check: generator {g} of Q is not in {i}", generator=g)
    return ideal_equal(ideal_product(i, i), ideal_product(q, i), nmax)
