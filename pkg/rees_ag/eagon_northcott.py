"""Eagon-Northcott complex of the 2 x r matrix with rows (X_1 .. X_r) and (a_1 .. a_r) over S = R[X_1, .., X_r].

C_0 = S and, for n >= 1, C_n has basis T_I (x) Y1^v1 Y2^v2 with |I| = n + 1 and v1 + v2 = n - 1,
placed in X-degree v1 + 1.  Bases are ordered by v1, then by the omitted indices of I.
Matrices are stored with rows indexed by the target basis and columns by the source basis.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import HypothesisError, InputError
from .polyring import Polynomial, RingDescriptor, det_exact, matmul, transpose


logger = logging.getLogger(__name__)

Label = tuple[tuple[int, ...], int, int]
MatrixRows = tuple[tuple[Polynomial, ...], ...]

ACYCLICITY_NOTE = "acyclicity by Eagon-Northcott citation (perfection of determinantal ideals of maximal minors)"


@dataclass(frozen=True)
class GradedFreeModule:
    shifts: tuple[int, ...]
    labels: tuple[Label, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.shifts)


@dataclass
class GradedMap:
    matrix: MatrixRows
    source: GradedFreeModule
    target: GradedFreeModule

    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.rank, self.source.rank)


@dataclass
class ENComplex:
    r: int
    base_ring: RingDescriptor
    ring: RingDescriptor
    a: tuple[Polynomial, ...]
    modules: list[GradedFreeModule]
    maps: list[GradedMap]
    tM: MatrixRows = ()

    @property
    def x_indices(self) -> tuple[int, ...]:
        return tuple(range(self.base_ring.d, self.ring.d))

    @property
    def x_vars(self) -> list[Polynomial]:
        return [self.ring.gens()[idx] for idx in self.x_indices]

    def differential(self, n: int) -> GradedMap:
        return self.maps[n - 1]


@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ComplexReport:
    r: int
    checks: list[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.checks)

    @property
    def failures(self) -> list[CheckItem]:
        return [item for item in self.checks if not item.passed]


@dataclass
class CanonicalPresentation:
    generator_degrees: tuple[int, ...]
    relation_degrees: tuple[int, ...]
    relations: MatrixRows
    type: int


def x_names(r: int) -> tuple[str, ...]:
    return tuple(f"X{j}" for j in range(1, r + 1))


def extended_ring(base: RingDescriptor, r: int) -> RingDescriptor:
    return base.extend(x_names(r))


def _prepare(r: int, a: Sequence[Polynomial]) -> tuple[RingDescriptor, RingDescriptor, tuple[Polynomial, ...], list[Polynomial]]:
    if r < 2:
        raise InputError(f"Eagon-Northcott construction needs r >= 2, got {r}")
    if len(a) != r:
        raise InputError(f"Expected {r} parameters, got {len(a)}")
    base = a[0].ring
    if any(p.ring != base for p in a):
        raise InputError("All parameters must live in the same ring")
    ring = extended_ring(base, r)
    embedded = tuple(p.embed(ring) for p in a)
    xs = [ring.var(name) for name in x_names(r)]
    return base, ring, embedded, xs


def en_module(r: int, n: int) -> GradedFreeModule:
    if n == 0:
        return GradedFreeModule(shifts=(0,), labels=(((), 0, 0),))
    labels: list[Label] = []
    indices = tuple(range(1, r + 1))
    for v1 in range(n):
        for omitted in combinations(indices, r - n - 1):
            subset = tuple(j for j in indices if j not in omitted)
            labels.append((subset, v1, n - 1 - v1))
    return GradedFreeModule(shifts=tuple(v1 + 1 for _, v1, _ in labels), labels=tuple(labels))


def _koszul(subset: tuple[int, ...], values: Sequence[Polynomial]) -> list[tuple[tuple[int, ...], Polynomial]]:
    terms = []
    for s, j in enumerate(subset):
        coeff = values[j - 1] if s % 2 == 0 else -values[j - 1]
        terms.append((subset[:s] + subset[s + 1 :], coeff))
    return terms


def _first_differential(ring: RingDescriptor, a: Sequence[Polynomial], xs: Sequence[Polynomial], r: int) -> GradedMap:
    source = en_module(r, 1)
    row = tuple(det_exact([[xs[i - 1], xs[j - 1]], [a[i - 1], a[j - 1]]]) for (i, j), _, _ in source.labels)
    return GradedMap(matrix=(row,), source=source, target=en_module(r, 0))


def _higher_differential(ring: RingDescriptor, a: Sequence[Polynomial], xs: Sequence[Polynomial], r: int, n: int) -> GradedMap:
    source = en_module(r, n)
    target = en_module(r, n - 1)
    position = {label: idx for idx, label in enumerate(target.labels)}
    zero = ring.zero()
    columns = []
    for subset, v1, v2 in source.labels:
        column = [zero] * target.rank
        if v1 >= 1:
            for smaller, coeff in _koszul(subset, xs):
                idx = position[(smaller, v1 - 1, v2)]
                column[idx] = column[idx] + coeff
        if v2 >= 1:
            for smaller, coeff in _koszul(subset, a):
                idx = position[(smaller, v1, v2 - 1)]
                column[idx] = column[idx] + coeff
        columns.append(column)
    matrix = tuple(tuple(columns[c][row] for c in range(source.rank)) for row in range(target.rank))
    return GradedMap(matrix=matrix, source=source, target=target)


def build_en_complex(r: int, a: Sequence[Polynomial]) -> ENComplex:
    base, ring, embedded, xs = _prepare(r, a)
    maps = [_first_differential(ring, embedded, xs, r)]
    for n in range(2, r):
        maps.append(_higher_differential(ring, embedded, xs, r, n))
    modules = [en_module(r, n) for n in range(r)]
    tM = transpose(maps[-1].matrix) if r >= 3 else ()
    logger.debug("built Eagon-Northcott complex r=%d with ranks %s", r, [m.rank for m in modules])
    return ENComplex(r=r, base_ring=base, ring=ring, a=embedded, modules=modules, maps=maps, tM=tM)


def last_differential(r: int, a: Sequence[Polynomial]) -> GradedMap:
    """The transposed last differential, assembled row by row from the band pattern."""
    if r < 3:
        raise InputError(f"last_differential needs r >= 3, got {r}")
    _, ring, embedded, xs = _prepare(r, a)
    zero = ring.zero()
    a_band = [p if j % 2 == 0 else -p for j, p in enumerate(embedded)]
    x_band = [p if j % 2 == 0 else -p for j, p in enumerate(xs)]
    rows = []
    for i in range(r - 1):
        row = [zero] * (r * (r - 2))
        if i <= r - 3:
            row[i * r : (i + 1) * r] = a_band
        if i >= 1:
            row[(i - 1) * r : i * r] = x_band
        rows.append(tuple(row))
    target = GradedFreeModule(shifts=tuple(r - 1 - i for i in range(r - 1)))
    source = GradedFreeModule(shifts=tuple(r - 1 - k for k in range(r - 2) for _ in range(r)))
    return GradedMap(matrix=tuple(rows), source=source, target=target)


def canonical_presentation(r: int, a: Sequence[Polynomial]) -> CanonicalPresentation:
    tm = last_differential(r, a)
    for row in tm.matrix:
        for entry in row:
            if entry and entry.constant_term() != 0:
                raise HypothesisError(f"canonical_presentation: entry {entry} is a unit; presentation is not minimal")
    return CanonicalPresentation(
        generator_degrees=tm.target.shifts,
        relation_degrees=tm.source.shifts,
        relations=tm.matrix,
        type=r - 1,
    )


def _drop_x(poly: Polynomial, base: RingDescriptor) -> Polynomial:
    d = base.d
    return Polynomial(base, {mono[:d]: c for mono, c in poly.terms.items() if not any(mono[d:])})


def cokernel_fiber(r: int, a: Sequence[Polynomial]) -> list[tuple[int, tuple[Polynomial, ...]]]:
    """C/S_+C as a direct sum of shifted copies of R/Q: drop the bottom row, set X to 0, read each row."""
    tm = last_differential(r, a)
    base = a[0].ring
    summands = []
    for shift, row in zip(tm.target.shifts[:-1], tm.matrix[:-1]):
        gens = tuple(p for p in (_drop_x(entry, base) for entry in row) if p)
        summands.append((shift, gens))
    return summands


def _is_zero_matrix(matrix: MatrixRows) -> bool:
    return all(entry.is_zero() for row in matrix for entry in row)


def _sign_class(poly: Polynomial) -> frozenset[Polynomial]:
    return frozenset({poly, -poly})


def verify_complex(c: ENComplex) -> ComplexReport:
    report = ComplexReport(r=c.r)
    ring = c.ring
    xs = c.x_vars
    x_idx = c.x_indices

    for n in range(1, len(c.maps)):
        product = matmul(c.maps[n - 1].matrix, c.maps[n].matrix, ring)
        report.checks.append(CheckItem(f"d{n} o d{n + 1} = 0", _is_zero_matrix(product)))

    allowed = set()
    for p in list(c.a) + xs:
        allowed |= _sign_class(p)
    for n, gmap in enumerate(c.maps, start=1):
        bad = []
        for row_idx, row in enumerate(gmap.matrix):
            for col_idx, entry in enumerate(row):
                if entry.is_zero():
                    continue
                expected = gmap.source.shifts[col_idx] - gmap.target.shifts[row_idx]
                if entry.partial_degrees(x_idx) != {expected}:
                    bad.append(f"({row_idx},{col_idx})")
                elif n >= 2 and entry not in allowed:
                    bad.append(f"({row_idx},{col_idx})")
        report.checks.append(CheckItem(f"d{n} homogeneous", not bad, ", ".join(bad)))

    for n, module in enumerate(c.modules[1:], start=1):
        expected = comb(c.r, n + 1) * n
        report.checks.append(CheckItem(f"rank C{n} = {expected}", module.rank == expected, f"got {module.rank}"))

    minors = {
        _sign_class(det_exact([[xs[i], xs[j]], [c.a[i], c.a[j]]]))
        for i, j in combinations(range(c.r), 2)
    }
    image = {_sign_class(entry) for entry in c.maps[0].matrix[0]}
    report.checks.append(CheckItem("d1 generates the 2x2 minors", image == minors))

    substitution = {name: p for name, p in zip(x_names(c.r), c.a)}
    specialised = [entry.subs(substitution) for entry in c.maps[0].matrix[0]]
    report.checks.append(CheckItem("d1 vanishes under X -> a", all(p.is_zero() for p in specialised)))

    if c.r >= 3:
        base_a = [_drop_x(p, c.base_ring) for p in c.a]
        direct = last_differential(c.r, base_a).matrix
        consistent = c.tM == direct and transpose(c.maps[-1].matrix) == direct
        report.checks.append(CheckItem("transposed last differential matches band pattern", consistent))

    for item in report.failures:
        logger.warning("Eagon-Northcott check failed for r=%d: %s %s", c.r, item.name, item.detail)
    return report
