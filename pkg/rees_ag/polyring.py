from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence, Union

import sympy

from .errors import InputError, NotInvertibleError, RingMismatchError, UnknownVariableError


Scalar = Union[int, Fraction]
Monomial = tuple[int, ...]
Matrix = Sequence[Sequence["Polynomial"]]

VARIABLE_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class RingDescriptor:
    variables: tuple[str, ...]
    characteristic: int = 0

    def __post_init__(self) -> None:
        names = tuple(str(v) for v in self.variables)
        object.__setattr__(self, "variables", names)
        if not names:
            raise InputError("A ring needs at least one variable")
        for name in names:
            if not VARIABLE_PATTERN.match(name):
                raise InputError(f"Invalid variable name: {name!r}")
        if len(set(names)) != len(names):
            raise InputError(f"Duplicate variable names in {list(names)}")
        if self.characteristic < 0 or (self.characteristic and not sympy.isprime(self.characteristic)):
            raise InputError(f"Field characteristic must be 0 or a prime, got {self.characteristic}")

    @property
    def d(self) -> int:
        return len(self.variables)

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic > 0

    @property
    def field_label(self) -> str:
        return f"GF({self.characteristic})" if self.characteristic else "QQ"

    def coerce(self, value: Scalar) -> Scalar:
        p = self.characteristic
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise InputError(f"Unsupported coefficient {value!r}")
        if not p:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise NotInvertibleError(f"Denominator {value.denominator} is not invertible in {self.field_label}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return value % p

    def inverse(self, value: Scalar) -> Scalar:
        value = self.coerce(value)
        if value == 0:
            raise NotInvertibleError(f"Zero is not invertible in {self.field_label}")
        if self.characteristic:
            return pow(int(value), -1, self.characteristic)
        return 1 / Fraction(value)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(f"Unknown variable {name!r}; ring variables are {list(self.variables)}") from None

    def var(self, name: str) -> Polynomial:
        exps = [0] * self.d
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(name) for name in self.variables]

    def zero(self) -> Polynomial:
        return Polynomial(self)

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, value: Scalar) -> Polynomial:
        return Polynomial(self, {(0,) * self.d: value})

    def monomial(self, exponents: Sequence[int], coefficient: Scalar = 1) -> Polynomial:
        return Polynomial(self, {tuple(exponents): coefficient})

    def extend(self, names: Iterable[str]) -> RingDescriptor:
        extra = tuple(names)
        clash = set(extra).intersection(self.variables)
        if clash:
            raise InputError(f"Variables {sorted(clash)} already exist in the ring")
        return RingDescriptor(self.variables + extra, self.characteristic)


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    result: list[Monomial] = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for idx in combo:
            exps[idx] += 1
        result.append(tuple(exps))
    return result


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    return (sum(mono), mono)


class Polynomial:
    """Sparse polynomial with exact coefficients; treated as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        clean: dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != ring.d or any(e < 0 for e in mono):
                raise InputError(f"Exponent vector {mono} does not fit ring with {ring.d} variables")
            value = ring.coerce(coeff)
            if mono in clean:
                value = ring.coerce(clean[mono] + value)
            if value:
                clean[mono] = value
            else:
                clean.pop(mono, None)
        self.ring = ring
        self.terms = clean

    @classmethod
    def _trusted(cls, ring: RingDescriptor, terms: dict[Monomial, Scalar]) -> Polynomial:
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.terms = terms
        return poly

    def _lift(self, other: object) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"Ring mismatch: {self.ring.variables} vs {other.ring.variables}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        raise TypeError(f"Cannot combine Polynomial with {type(other).__name__}")

    def _combine(self, other: Polynomial, sign: int) -> Polynomial:
        p = self.ring.characteristic
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            value = terms.get(mono, 0) + sign * coeff
            if p:
                value %= p
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return Polynomial._trusted(self.ring, terms)

    def __add__(self, other: object) -> Polynomial:
        return self._combine(self._lift(other), 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> Polynomial:
        return self._combine(self._lift(other), -1)

    def __rsub__(self, other: object) -> Polynomial:
        return self._lift(other)._combine(self, -1)

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __mul__(self, other: object) -> Polynomial:
        other = self._lift(other)
        p = self.ring.characteristic
        terms: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = terms.get(mono, 0) + c1 * c2
        if p:
            terms = {m: c % p for m, c in terms.items() if c % p}
        else:
            terms = {m: c for m, c in terms.items() if c}
        return Polynomial._trusted(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> Polynomial:
        factor = self.ring.coerce(factor)
        if not factor:
            return self.ring.zero()
        p = self.ring.characteristic
        if p:
            terms = {m: c * factor % p for m, c in self.terms.items()}
        else:
            terms = {m: c * factor for m, c in self.terms.items()}
        return Polynomial._trusted(self.ring, terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> int | None:
        return min((sum(m) for m in self.terms), default=None)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.ring.d, self.ring.coerce(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def partial_degrees(self, indices: Iterable[int]) -> set[int]:
        idx = tuple(indices)
        return {sum(m[i] for i in idx) for m in self.terms}

    def is_homogeneous_in(self, indices: Iterable[int]) -> bool:
        return len(self.partial_degrees(indices)) <= 1

    def truncate(self, bound: int) -> Polynomial:
        return Polynomial._trusted(self.ring, {m: c for m, c in self.terms.items() if sum(m) < bound})

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def leading_coefficient(self) -> Scalar:
        terms = self.sorted_terms()
        return terms[0][1] if terms else self.ring.coerce(0)

    def embed(self, ring: RingDescriptor) -> Polynomial:
        if ring.characteristic != self.ring.characteristic:
            raise RingMismatchError(f"Cannot move {self.ring.field_label} elements into {ring.field_label}")
        positions = [ring.index(name) for name in self.ring.variables]
        terms: dict[Monomial, Scalar] = {}
        for mono, coeff in self.terms.items():
            exps = [0] * ring.d
            for pos, e in zip(positions, mono):
                exps[pos] = e
            terms[tuple(exps)] = coeff
        return Polynomial._trusted(ring, terms)

    def subs(self, mapping: Mapping[str, Polynomial]) -> Polynomial:
        images = []
        for name in self.ring.variables:
            image = mapping.get(name)
            images.append(self._lift(image) if image is not None else self.ring.var(name))
        result = self.ring.zero()
        for mono, coeff in self.terms.items():
            term = self.ring.constant(coeff)
            for image, e in zip(images, mono):
                if e:
                    term = term * image**e
            result = result + term
        return result

    def primitive(self) -> Polynomial:
        if not self.terms:
            return self
        if self.ring.characteristic:
            return self.scale(self.ring.inverse(self.leading_coefficient()))
        denominators = [Fraction(c).denominator for c in self.terms.values()]
        lcm = math.lcm(*denominators)
        numerators = [int(Fraction(c) * lcm) for c in self.terms.values()]
        content = math.gcd(*numerators)
        factor = Fraction(lcm, content)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self.scale(factor)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def format_coefficient(value: Scalar) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(poly: Polynomial) -> str:
    if not poly.terms:
        return "0"
    pieces: list[str] = []
    for position, (mono, coeff) in enumerate(poly.sorted_terms()):
        negative = not poly.ring.characteristic and coeff < 0
        magnitude = -coeff if negative else coeff
        monomial = format_monomial(mono, poly.ring.variables)
        if not monomial:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_coefficient(magnitude)}*{monomial}"
        if position == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def poly_arith(op: str, f: Polynomial, g: Polynomial | Scalar) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        if isinstance(g, Polynomial):
            raise InputError("scale expects a scalar")
        return f.scale(g)
    raise InputError(f"Unknown polynomial operation {op!r}")


def det_exact(matrix: Matrix) -> Polynomial:
    rows = [list(row) for row in matrix]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise InputError(f"det_exact needs a non-empty square matrix, got {n} rows of lengths {[len(r) for r in rows]}")
    ring = rows[0][0].ring
    for row in rows:
        for entry in row:
            if entry.ring != ring:
                raise RingMismatchError("Matrix entries live in different rings")
    return _laplace(rows, ring)


def _laplace(rows: list[list[Polynomial]], ring: RingDescriptor) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for col, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1 :] for row in rows[1:]]
        cofactor = entry * _laplace(minor, ring)
        total = total - cofactor if col % 2 else total + cofactor
    return total


def transpose(matrix: Matrix) -> tuple[tuple[Polynomial, ...], ...]:
    if not matrix:
        return ()
    return tuple(tuple(row[j] for row in matrix) for j in range(len(matrix[0])))


def matmul(left: Matrix, right: Matrix, ring: RingDescriptor) -> tuple[tuple[Polynomial, ...], ...]:
    inner = len(right)
    if any(len(row) != inner for row in left):
        raise InputError("Matrix shapes do not compose")
    width = len(right[0]) if right else 0
    result = []
    for row in left:
        out = []
        for j in range(width):
            acc = ring.zero()
            for k in range(inner):
                if row[k] and right[k][j]:
                    acc = acc + row[k] * right[k][j]
            out.append(acc)
        result.append(tuple(out))
    return tuple(result)
