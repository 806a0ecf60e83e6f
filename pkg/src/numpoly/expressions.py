"""Recursive-descent parser for the polynomial expression grammar.

Accepted inputs: integers, the symbol w, the operators + - * / ^ and
parentheses.  Exponents are integers, possibly negative (written after
^ either bare or parenthesized).  Division is exact and the divisor
must be a nonzero single-term monomial, so "a/b" rationals fall out of
the grammar for free.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, ParseError
from .polynomials import LaurentPoly

_OPS = set("+-*/^()")


def _tokenize(text: str) -> list:
    tokens: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
            continue
        if ch == "w":
            tokens.append("w")
            i += 1
            continue
        if ch in _OPS:
            tokens.append(ch)
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> LaurentPoly:
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input from token {self.peek()!r}")
        return value

    def expr(self) -> LaurentPoly:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ParseError("division by zero")
                try:
                    value = value / rhs
                except DomainError as exc:
                    raise ParseError(str(exc)) from None
        return value

    def unary(self) -> LaurentPoly:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exponent = self.exponent()
            try:
                return base**exponent
            except DomainError as exc:
                raise ParseError(str(exc)) from None
        return base

    def exponent(self) -> int:
        tok = self.peek()
        if tok == "-":
            self.take()
            value = self.take()
            if not isinstance(value, int):
                raise ParseError("exponent must be an integer")
            return -value
        if tok == "(":
            self.take()
            value = self.exponent()
            self.expect(")")
            return value
        value = self.take()
        if not isinstance(value, int):
            raise ParseError("exponent must be an integer")
        return value

    def atom(self) -> LaurentPoly:
        tok = self.take()
        if isinstance(tok, int):
            return LaurentPoly.constant(tok)
        if tok == "w":
            return LaurentPoly.w()
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {tok!r}")


def parse_expression(text: str) -> LaurentPoly:
    if not text or not text.strip():
        raise ParseError("empty expression")
    return _Parser(_tokenize(text)).parse()


def poly_from_json(data: dict):
    """Rebuild a polynomial from the wire format of either basis."""
    from .polynomials import BinomialPoly

    basis = data.get("basis")
    terms = {}
    for item in data.get("terms", []):
        terms[int(item["k"])] = Fraction(item["coeff"])
    if basis == "monomial":
        return LaurentPoly(terms)
    if basis == "binomial":
        return BinomialPoly(terms)
    raise ParseError(f"unknown basis {basis!r}")
