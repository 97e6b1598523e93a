"""Parser for quantum-torus expressions such as ``-q^(-1/2)*(Z1^-1*Zpp2 + Zpp1*Zpp2)``.

Grammar::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ['^' power]
    atom     := INT | 'q' | GEN | '(' expr ')'
    GEN      := ('Z' | 'Zp' | 'Zpp') TET       TET is the 1-based tetrahedron number
    power    := ['-'] INT | '(' ['-'] INT ['/' '2'] ')'

Generators Z, Zp, Zpp stand for Z_j, Z'_j, Z''_j. A run of adjacent generator
factors inside one term denotes the Weyl-ordered monomial with the summed
exponents (so ``Zpp1*Z1`` and ``Z1*Zpp1`` are the same element). Products that
involve a parenthesized sub-expression use the noncommutative torus product.
Half-integer powers are allowed only on q.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .qseries import QSeries
from .qtorus import TorusElement

_TOKEN = re.compile(r"\s*(?:(Zpp|Zp|Z)(\d+)|(q)|(\d+)|([-+*^()/]))")


def _tokenize(text: str) -> list[tuple[str, object]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        if m.group(1):
            tokens.append(("gen", (("Z", "Zp", "Zpp").index(m.group(1)), int(m.group(2)))))
        elif m.group(3):
            tokens.append(("q", None))
        elif m.group(4):
            tokens.append(("int", int(m.group(4))))
        else:
            tokens.append((m.group(5), None))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ntets: int):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ntets = ntets

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of expression")
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}")
        self.pos += 1
        return tok

    def parse(self) -> TorusElement:
        if not self.tokens:
            raise ParseError("empty expression")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input starting at token {self.tokens[self.pos][0]!r}")
        return result

    def expr(self) -> TorusElement:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        total = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            total = total + self.term().scale(sign)
        return total

    def power(self) -> Fraction:
        if self.peek() == "(":
            self.take("(")
            neg = self.peek() == "-" and self.take()
            num = self.take("int")[1]
            den = 1
            if self.peek() == "/":
                self.take("/")
                den = self.take("int")[1]
            self.take(")")
            value = Fraction(num, den)
        else:
            neg = self.peek() == "-" and self.take()
            value = Fraction(self.take("int")[1])
        return -value if neg else value

    def term(self) -> TorusElement:
        scalar = QSeries.one()
        pending = [0] * (3 * self.ntets)
        have_pending = False
        result: TorusElement | None = None
        while True:
            kind = self.peek()
            if kind == "int":
                value = self.take()[1]
                p = self._int_power()
                if p < 0:
                    raise ParseError("negative powers of integers are not supported")
                scalar = scalar * (value**p)
            elif kind == "q":
                self.take()
                p = self.power() if self.peek() == "^" and self.take() else Fraction(1)
                if (2 * p).denominator != 1:
                    raise ParseError(f"q^{p} is not a half-integer power")
                scalar = scalar.shift(int(2 * p))
            elif kind == "gen":
                slot, tet = self.take()[1]
                if not 1 <= tet <= self.ntets:
                    raise ParseError(f"tetrahedron {tet} out of range 1..{self.ntets}")
                p = self._int_power()
                pending[3 * (tet - 1) + slot] += p
                have_pending = True
            elif kind == "(":
                self.take()
                inner = self.expr()
                self.take(")")
                p = self._int_power()
                if p < 0:
                    raise ParseError("negative powers of parenthesized expressions are not supported")
                inner = inner**p
                if have_pending:
                    result = self._times(result, TorusElement.weyl(pending))
                    pending = [0] * (3 * self.ntets)
                    have_pending = False
                result = self._times(result, inner)
            else:
                raise ParseError(f"expected a factor, found {kind!r}")
            if self.peek() == "*":
                self.take()
                continue
            break
        if have_pending or result is None:
            result = self._times(result, TorusElement.weyl(pending))
        return result.scale(scalar)

    def _int_power(self) -> int:
        if self.peek() != "^":
            return 1
        self.take()
        p = self.power()
        if p.denominator != 1:
            raise ParseError("fractional powers are only allowed on q")
        return int(p)

    @staticmethod
    def _times(a: TorusElement | None, b: TorusElement) -> TorusElement:
        return b if a is None else a * b


def parse_element(text: str, ntets: int) -> TorusElement:
    """Parse an expression into a TorusElement on ``ntets`` tetrahedra."""
    return _Parser(text, ntets).parse()
