"""Ring strings and element literals.

Grammar::

    ring    := "Z" | "Zmod(" int ")" | "GF(" int ")[x]"
             | "Prod(" ring "," ring ")" | "Quot(" ring "," elem ")"
    elem    := int | "[" [int ("," int)*] "]" | "(" elem "," elem ")"

Coefficient lists run low to high, so ``[1,1]`` is ``1 + x``.
"""

from __future__ import annotations

import re

from .errors import BezredError, ParseError
from .rings import Integers, PolyRing, Product, Ring, Zmod, quotient_ring

_TOKEN = re.compile(r"\s*(-?\d+|Zmod|Prod|Quot|GF|Z|\[x\]|[(),\[\]])")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'more input'} in {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer in {self.text!r}, got {tok!r}") from None

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}")

    def ring(self) -> Ring:
        tok = self.take()
        try:
            if tok == "Z":
                return Integers()
            if tok == "Zmod":
                self.take("(")
                n = self.integer()
                self.take(")")
                return Zmod(n)
            if tok == "GF":
                self.take("(")
                p = self.integer()
                self.take(")")
                self.take("[x]")
                return PolyRing(p)
            if tok == "Prod":
                self.take("(")
                left = self.ring()
                self.take(",")
                right = self.ring()
                self.take(")")
                return Product(left, right)
            if tok == "Quot":
                self.take("(")
                base = self.ring()
                self.take(",")
                a = self.element(base)
                self.take(")")
                return quotient_ring(base, a)
        except (ValueError, BezredError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from exc
        raise ParseError(f"unknown ring {tok!r} in {self.text!r}")

    def raw(self):
        tok = self.peek()
        if tok == "[":
            self.take()
            if self.peek() == "]":
                self.take()
                return []
            out = [self.integer()]
            while self.peek() == ",":
                self.take()
                out.append(self.integer())
            self.take("]")
            return out
        if tok == "(":
            self.take()
            left = self.raw()
            self.take(",")
            right = self.raw()
            self.take(")")
            return (left, right)
        return self.integer()

    def element(self, ring: Ring):
        return decode_element(ring, self.raw())


def decode_element(ring: Ring, v):
    """Turn a JSON-ish value (int, coefficient list, pair) into an element."""
    if isinstance(v, str):
        return parse_element(ring, v)
    if isinstance(ring, Product):
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise ParseError(f"expected a pair for {ring}, got {v!r}")
        return (decode_element(ring.left, v[0]), decode_element(ring.right, v[1]))
    try:
        return ring.from_json(list(v) if isinstance(v, tuple) else v)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad element {v!r} for {ring}: {exc}") from exc


def parse_ring(text: str) -> Ring:
    p = _Parser(text)
    ring = p.ring()
    p.done()
    return ring


def parse_element(ring: Ring, text: str):
    p = _Parser(text)
    a = p.element(ring)
    p.done()
    return a
