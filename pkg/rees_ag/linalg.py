from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .polyring import Scalar


logger = logging.getLogger(__name__)

SparseRow = dict[int, Scalar]


def _integer_row(row: Mapping[int, Scalar]) -> tuple[dict[int, int], int]:
    entries = {c: Fraction(v) for c, v in row.items() if v}
    if not entries:
        return {}, 1
    scale = math.lcm(*(v.denominator for v in entries.values()))
    return {c: int(v * scale) for c, v in entries.items()}, scale


def _primitive(row: dict[int, int]) -> dict[int, int]:
    content = math.gcd(*row.values())
    if row[min(row)] < 0:
        content = -content
    if content == 1:
        return row
    return {c: v // content for c, v in row.items()}


class RowEchelon:
    """Sparse echelon form keyed by pivot column; the pivot of a row is its smallest column.

    Over QQ rows are kept as primitive integer vectors and eliminated fraction-free.
    Over GF(p) rows are kept monic.
    """

    def __init__(self, characteristic: int = 0) -> None:
        self.characteristic = characteristic
        self.rows: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivot_columns(self) -> set[int]:
        return set(self.rows)

    def _eliminate(self, row: Mapping[int, Scalar]) -> tuple[SparseRow, int]:
        p = self.characteristic
        if p:
            work: SparseRow = {c: int(v) % p for c, v in row.items() if int(v) % p}
            while True:
                hits = [c for c in work if c in self.rows]
                if not hits:
                    return work, 1
                col = min(hits)
                factor = work[col]
                for c, v in self.rows[col].items():
                    value = (work.get(c, 0) - factor * v) % p
                    if value:
                        work[c] = value
                    else:
                        work.pop(c, None)
        work, scale = _integer_row(row)
        while True:
            hits = [c for c in work if c in self.rows]
            if not hits:
                return work, scale
            col = min(hits)
            prow = self.rows[col]
            pc, vc = prow[col], work[col]
            g = math.gcd(pc, vc)
            left, right = pc // g, vc // g
            if left != 1:
                work = {c: v * left for c, v in work.items()}
                scale *= left
            for c, v in prow.items():
                value = work.get(c, 0) - right * v
                if value:
                    work[c] = value
                else:
                    work.pop(c, None)
            if work:
                content = math.gcd(*work.values())
                if content > 1:
                    work = {c: v // content for c, v in work.items()}
                    scale = Fraction(scale, content)

    def reduce(self, row: Mapping[int, Scalar]) -> SparseRow:
        work, scale = self._eliminate(row)
        if self.characteristic:
            return work
        return {c: Fraction(v) / scale for c, v in work.items()}

    def add(self, row: Mapping[int, Scalar]) -> bool:
        work, _ = self._eliminate(row)
        if not work:
            return False
        pivot = min(work)
        if self.characteristic:
            inv = pow(work[pivot], -1, self.characteristic)
            work = {c: v * inv % self.characteristic for c, v in work.items()}
        else:
            work = _primitive({c: int(v) for c, v in work.items()})
        self.rows[pivot] = work
        return True

    def extend(self, rows: Iterable[Mapping[int, Scalar]]) -> int:
        return sum(1 for row in rows if self.add(row))

    def contains(self, row: Mapping[int, Scalar]) -> bool:
        work, _ = self._eliminate(row)
        return not work


def fraction_free_rank(rows: Iterable[Mapping[int, Scalar]], characteristic: int = 0) -> int:
    echelon = RowEchelon(characteristic)
    echelon.extend(rows)
    return echelon.rank


def nullspace(images: list[Mapping[int, Scalar]], width: int, characteristic: int = 0) -> list[SparseRow]:
    """Basis of {c : sum_j c_j * images[j] = 0}; image columns must lie in range(width)."""
    echelon = RowEchelon(characteristic)
    for j, image in enumerate(images):
        augmented: dict[int, Scalar] = dict(image)
        augmented[width + j] = 1
        echelon.add(augmented)
    kernel = []
    for pivot in sorted(echelon.rows):
        if pivot < width:
            continue
        kernel.append({c - width: v for c, v in echelon.rows[pivot].items()})
    logger.debug("nullspace: %d images, width %d, kernel dimension %d", len(images), width, len(kernel))
    return kernel
