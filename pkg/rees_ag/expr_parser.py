from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import ExpressionSyntaxError, NotInvertibleError
from .polyring import Polynomial, RingDescriptor


TOKEN_PATTERN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])|(?P<bad>\S))")
END = "end"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            break
        kind = match.lastgroup
        if kind is None:
            break
        start = match.start(kind)
        if kind == "bad":
            raise ExpressionSyntaxError(f"Unexpected character {match.group(kind)!r}", start)
        tokens.append(Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(Token(END, "", len(text)))
    return tokens


class PolynomialParser:
    """Recursive descent over expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
    unary := ('+'|'-') unary | power, power := atom ('^' INT)?, atom := INT | IDENT | '(' expr ')'."""

    def __init__(self, text: str, ring: RingDescriptor) -> None:
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != END:
            self.index += 1
        return token

    def at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise self.unexpected(f"Expected {op!r}")
        return self.advance()

    def unexpected(self, prefix: str = "Unexpected token") -> ExpressionSyntaxError:
        token = self.current
        if token.kind == END:
            return ExpressionSyntaxError(f"{prefix}: unexpected end of input", token.position)
        return ExpressionSyntaxError(f"{prefix}: found {token.text!r}", token.position)

    def parse(self) -> Polynomial:
        result = self.parse_expr()
        if self.current.kind != END:
            raise self.unexpected()
        return result

    def parse_expr(self) -> Polynomial:
        result = self.parse_term()
        while self.at_op("+", "-"):
            op = self.advance().text
            right = self.parse_term()
            result = result + right if op == "+" else result - right
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_unary()
        while self.at_op("*", "/"):
            op = self.advance()
            right = self.parse_unary()
            if op.text == "*":
                result = result * right
                continue
            if right.degree() > 0:
                raise ExpressionSyntaxError("Division by a non-constant expression", op.position)
            divisor = right.constant_term()
            if divisor == 0:
                raise NotInvertibleError(f"Division by zero in {self.ring.field_label} at position {op.position}")
            result = result.scale(self.ring.inverse(divisor))
        return result

    def parse_unary(self) -> Polynomial:
        if self.at_op("-"):
            self.advance()
            return -self.parse_unary()
        if self.at_op("+"):
            self.advance()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Polynomial:
        base = self.parse_atom()
        if self.at_op("^"):
            self.advance()
            if self.current.kind != "int":
                raise self.unexpected("Exponent must be a non-negative integer literal")
            base = base ** int(self.advance().text)
        return base

    def parse_atom(self) -> Polynomial:
        token = self.current
        if token.kind == "int":
            self.advance()
            return self.ring.constant(int(token.text))
        if token.kind == "ident":
            self.advance()
            return self.ring.var(token.text)
        if self.at_op("("):
            self.advance()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise self.unexpected()


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    return PolynomialParser(text, ring).parse()


def parse_generators(texts: Iterable[str], ring: RingDescriptor) -> list[Polynomial]:
    return [parse_polynomial(text, ring) for text in texts]
