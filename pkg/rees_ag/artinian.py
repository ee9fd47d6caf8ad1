from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import ContainmentError, HypothesisError, InputError, InternalInconsistencyError, NotPrimaryError, RingMismatchError
from .expr_parser import parse_generators
from .linalg import RowEchelon, SparseRow, fraction_free_rank, nullspace
from .polyring import Monomial, Polynomial, RingDescriptor, Scalar, grlex_key, monomials_of_degree


logger = logging.getLogger(__name__)

DEFAULT_NMAX = 40


@dataclass(frozen=True)
class LocalIdeal:
    ring: RingDescriptor
    generators: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatchError(f"Generator {g} does not live in ring {list(self.ring.variables)}")

    @classmethod
    def from_strings(cls, ring: RingDescriptor, texts: Iterable[str]) -> LocalIdeal:
        return cls(ring, tuple(parse_generators(texts, ring)))

    @property
    def nonzero_generators(self) -> tuple[Polynomial, ...]:
        return tuple(g for g in self.generators if g)

    def is_zero(self) -> bool:
        return not self.nonzero_generators

    def is_unit(self) -> bool:
        return any(g.constant_term() != 0 for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def maximal_ideal(ring: RingDescriptor) -> LocalIdeal:
    return LocalIdeal(ring, tuple(ring.gens()))


def power_of_maximal(ring: RingDescriptor, n: int) -> LocalIdeal:
    if n < 0:
        raise InputError(f"power_of_maximal: exponent must be non-negative, got {n}")
    return LocalIdeal(ring, tuple(ring.monomial(m) for m in sorted(monomials_of_degree(ring.d, n), key=grlex_key, reverse=True)))


def unit_ideal(ring: RingDescriptor) -> LocalIdeal:
    return LocalIdeal(ring, (ring.one(),))


@dataclass
class ArtinianQuotient:
    """R/(I + m^N) with columns indexed by the monomials of degree < N in descending grlex order."""

    ideal: LocalIdeal
    N: int
    monomials: tuple[Monomial, ...]
    echelon: RowEchelon
    column_of: dict[Monomial, int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self.column_of:
            self.column_of = {m: i for i, m in enumerate(self.monomials)}

    @property
    def ring(self) -> RingDescriptor:
        return self.ideal.ring

    @property
    def length(self) -> int:
        return len(self.monomials) - self.echelon.rank

    @property
    def basis(self) -> tuple[Monomial, ...]:
        pivots = self.echelon.pivot_columns
        standard = [m for i, m in enumerate(self.monomials) if i not in pivots]
        return tuple(sorted(standard, key=grlex_key))

    def basis_polynomials(self) -> list[Polynomial]:
        return [self.ring.monomial(m) for m in self.basis]

    def vector(self, f: Polynomial) -> SparseRow:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} does not live in ring {list(self.ring.variables)}")
        return {self.column_of[m]: c for m, c in f.terms.items() if sum(m) < self.N}

    def reduced_vector(self, f: Polynomial) -> SparseRow:
        return self.echelon.reduce(self.vector(f))

    def normal_form(self, f: Polynomial) -> Polynomial:
        row = self.reduced_vector(f)
        return Polynomial(self.ring, {self.monomials[c]: v for c, v in row.items()})

    def coordinates(self, f: Polynomial) -> list[Scalar]:
        row = self.reduced_vector(f)
        zero = self.ring.coerce(0)
        return [row.get(self.column_of[m], zero) for m in self.basis]

    def contains(self, f: Polynomial) -> bool:
        return self.echelon.contains(self.vector(f))


def _truncated_level(ideal: LocalIdeal, n: int) -> ArtinianQuotient:
    ring = ideal.ring
    monomials = tuple(m for k in range(n - 1, -1, -1) for m in sorted(monomials_of_degree(ring.d, k), reverse=True))
    quotient = ArtinianQuotient(ideal=ideal, N=n, monomials=monomials, echelon=RowEchelon(ring.characteristic))
    column_of = quotient.column_of
    for g in ideal.nonzero_generators:
        order = g.order() or 0
        for k in range(n - order):
            for u in monomials_of_degree(ring.d, k):
                row: SparseRow = {}
                for mono, coeff in g.terms.items():
                    shifted = tuple(a + b for a, b in zip(mono, u))
                    if sum(shifted) < n:
                        row[column_of[shifted]] = coeff
                if row:
                    quotient.echelon.add(row)
    logger.debug("level N=%d for %s: %d columns, rank %d", n, ideal, len(monomials), quotient.echelon.rank)
    return quotient


@lru_cache(maxsize=512)
def stabilized_quotient(ideal: LocalIdeal, nmax: int = DEFAULT_NMAX) -> ArtinianQuotient:
    current = _truncated_level(ideal, 1)
    for n in range(1, nmax + 1):
        following = _truncated_level(ideal, n + 1)
        if following.length == current.length:
            logger.debug("stabilized %s at N=%d with length %d", ideal, n, current.length)
            return current
        current = following
    raise NotPrimaryError(f"stabilized_quotient: ideal {ideal} not m-primary or cap too small (nmax={nmax})")


def local_length(ideal: LocalIdeal, nmax: int = DEFAULT_NMAX) -> int:
    return stabilized_quotient(ideal, nmax).length


def membership(f: Polynomial, ideal: LocalIdeal, nmax: int = DEFAULT_NMAX) -> bool:
    return stabilized_quotient(ideal, nmax).contains(f)


def _same_ring(a: LocalIdeal, b: LocalIdeal, operation: str) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"{operation}: ideals live in different rings")


def _dedupe(polys: Iterable[Polynomial]) -> tuple[Polynomial, ...]:
    return tuple(dict.fromkeys(p for p in polys if p))


def ideal_combine(op: str, a: LocalIdeal, b: LocalIdeal) -> LocalIdeal:
    _same_ring(a, b, "ideal_combine")
    if op == "sum":
        return LocalIdeal(a.ring, a.generators + b.generators)
    if op == "product":
        return LocalIdeal(a.ring, _dedupe(f * g for f in a.generators for g in b.generators))
    raise InputError(f"ideal_combine: unknown operation {op!r}")


def ideal_sum(*ideals: LocalIdeal) -> LocalIdeal:
    result = ideals[0]
    for other in ideals[1:]:
        result = ideal_combine("sum", result, other)
    return result


def ideal_product(a: LocalIdeal, b: LocalIdeal) -> LocalIdeal:
    return ideal_combine("product", a, b)


def contains_ideal(big: LocalIdeal, small: LocalIdeal, nmax: int = DEFAULT_NMAX) -> bool:
    _same_ring(big, small, "contains_ideal")
    quotient = stabilized_quotient(big, nmax)
    return all(quotient.contains(g) for g in small.generators)


def ideal_equal(a: LocalIdeal, b: LocalIdeal, nmax: int = DEFAULT_NMAX) -> bool:
    return contains_ideal(a, b, nmax) and contains_ideal(b, a, nmax)


def _multiplication_kernel(a: LocalIdeal, multipliers: tuple[Polynomial, ...], nmax: int) -> tuple[ArtinianQuotient, list[SparseRow]]:
    quotient = stabilized_quotient(a, nmax)
    width = len(quotient.monomials)
    images: list[SparseRow] = []
    for s in quotient.basis_polynomials():
        image: SparseRow = {}
        for block, g in enumerate(multipliers):
            for col, value in quotient.reduced_vector(s * g).items():
                image[block * width + col] = value
        images.append(image)
    return quotient, nullspace(images, width * len(multipliers), a.ring.characteristic)


def colon(a: LocalIdeal, b: LocalIdeal, nmax: int = DEFAULT_NMAX) -> LocalIdeal:
    _same_ring(a, b, "colon")
    multipliers = b.nonzero_generators
    if not multipliers:
        return unit_ideal(a.ring)
    quotient, kernel = _multiplication_kernel(a, multipliers, nmax)
    basis = quotient.basis_polynomials()
    lifts = []
    for vector in kernel:
        lift = a.ring.zero()
        for k, coeff in vector.items():
            lift = lift + basis[k].scale(coeff)
        lifts.append(lift.primitive())
    logger.debug("colon %s : %s -> %d new generators", a, b, len(lifts))
    return LocalIdeal(a.ring, a.generators + tuple(lifts))


def socle_dimension(q: LocalIdeal, nmax: int = DEFAULT_NMAX) -> int:
    _, kernel = _multiplication_kernel(q, tuple(q.ring.gens()), nmax)
    return len(kernel)


def socle_ideal(q: LocalIdeal, nmax: int = DEFAULT_NMAX) -> LocalIdeal:
    length_q = local_length(q, nmax)
    if length_q <= 1:
        raise HypothesisError(f"socle_ideal: socle ideal of the maximal ideal is the unit ideal (Q = {q})")
    socle = colon(q, maximal_ideal(q.ring), nmax)
    s = socle_dimension(q, nmax)
    length_i = local_length(socle, nmax)
    if length_q != length_i + s:
        raise InternalInconsistencyError(
            f"socle_ideal: length check failed for {q}: l(R/Q)={length_q}, l(R/I)={length_i}, socle dimension {s}"
        )
    return socle


def mu(ideal: LocalIdeal, nmax: int = DEFAULT_NMAX) -> int:
    m_times = ideal_product(maximal_ideal(ideal.ring), ideal)
    return local_length(m_times, nmax) - local_length(ideal, nmax)


def mu_subquotient(j: LocalIdeal, i: LocalIdeal, nmax: int = DEFAULT_NMAX) -> int:
    _same_ring(j, i, "mu_subquotient")
    quotient = stabilized_quotient(j, nmax)
    for g in i.generators:
        if not quotient.contains(g):
            raise ContainmentError(f"mu_subquotient: generator {g} of the smaller ideal is not in {j}", generator=g)
    bigger = ideal_sum(i, ideal_product(maximal_ideal(j.ring), j))
    return local_length(bigger, nmax) - quotient.length


def linear_rank(ideal: LocalIdeal) -> int:
    rows = []
    for g in ideal.generators:
        row = {}
        for mono, coeff in g.terms.items():
            if sum(mono) == 1:
                row[mono.index(1)] = coeff
        if row:
            rows.append(row)
    return fraction_free_rank(rows, ideal.ring.characteristic)
