"""Truncated Laurent series in q^{1/2} with exact integer coefficients.

Exponents are counted in half-units: the integer ``h`` stands for ``q^{h/2}``.
Every series carries its own truncation ``order``: coefficients at exponents
strictly below ``order`` are exact, nothing is known at or above it. Laurent
polynomials known exactly use ``order = EXACT``.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Mapping

from .errors import InfinitePrecisionRequired, InsufficientOrder, LeadingCoefficientNotUnit, ParseError

EXACT = math.inf


def neg_half_power(s: int) -> tuple[int, int]:
    """Return ``(sign, half_exp)`` with ``(-q^{1/2})^s = sign * q^{half_exp/2}``."""
    return (-1 if s % 2 else 1), s


class QSeries:
    __slots__ = ("min_exp", "coeffs", "order")

    def __init__(self, min_exp: int, coeffs: Iterable[int], order: int | float):
        coeffs = list(coeffs)
        if order != EXACT:
            order = int(order)
            keep = max(0, order - min_exp)
            del coeffs[keep:]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        if start == end:
            self.min_exp = 0
            self.coeffs: tuple[int, ...] = ()
        else:
            self.min_exp = min_exp + start
            self.coeffs = tuple(coeffs[start:end])
        self.order = order

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, order: int | float = EXACT) -> QSeries:
        return cls(0, (), order)

    @classmethod
    def one(cls, order: int | float = EXACT) -> QSeries:
        return cls.monomial(1, 0, order)

    @classmethod
    def monomial(cls, c: int, e: int, order: int | float = EXACT) -> QSeries:
        if c == 0:
            return cls.zero(order)
        return cls(e, (c,), order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], order: int | float = EXACT) -> QSeries:
        terms = {e: c for e, c in terms.items() if c and e < order}
        if not terms:
            return cls.zero(order)
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)], order)

    # -- inspection ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return self.order == EXACT

    @property
    def valuation(self) -> int | float:
        """Leading exponent, or the order for a series known to vanish below it."""
        return self.min_exp if self.coeffs else self.order

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def terms(self) -> Iterator[tuple[int, int]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + i, c

    def coefficient(self, e: int) -> int:
        if e >= self.order:
            raise InsufficientOrder(f"coefficient at q^({e}/2) is beyond order {self.order}")
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    # -- arithmetic ---------------------------------------------------
    def truncate(self, order: int | float) -> QSeries:
        return QSeries(self.min_exp, self.coeffs, min(order, self.order))

    def shift(self, h: int) -> QSeries:
        """Multiply by q^{h/2}."""
        return QSeries(self.min_exp + h, self.coeffs, self.order + h)

    def __neg__(self) -> QSeries:
        return QSeries(self.min_exp, [-c for c in self.coeffs], self.order)

    def __add__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            other = QSeries.monomial(other, 0)
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        if not self.coeffs:
            return other.truncate(order)
        if not other.coeffs:
            return self.truncate(order)
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp - lo + i] += c
        return QSeries(lo, out, order)

    __radd__ = __add__

    def __sub__(self, other: QSeries | int) -> QSeries:
        return self + (-other)

    def __rsub__(self, other: QSeries | int) -> QSeries:
        return (-self) + other

    def __mul__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            return QSeries(self.min_exp, [c * other for c in self.coeffs], self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order + other.valuation, other.order + self.valuation)
        if not self.coeffs or not other.coeffs:
            return QSeries.zero(order)
        base = self.min_exp + other.min_exp
        length = len(self.coeffs) + len(other.coeffs) - 1
        if order != EXACT:
            length = min(length, order - base)
        out = [0] * max(length, 0)
        b = other.coeffs
        nb = len(b)
        for i, x in enumerate(self.coeffs):
            if i >= length:
                break
            if x == 0:
                continue
            stop = min(nb, length - i)
            for j in range(stop):
                out[i + j] += x * b[j]
        return QSeries(base, out, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QSeries:
        if n < 0:
            return self.invert_unit() ** (-n)
        result = QSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert_unit(self) -> QSeries:
        """Inverse of a series whose leading coefficient is +-1."""
        if not self.coeffs or self.coeffs[0] not in (1, -1):
            lead = self.coeffs[0] if self.coeffs else 0
            raise LeadingCoefficientNotUnit(f"leading coefficient {lead} is not a unit")
        lead = self.coeffs[0]
        m = self.min_exp
        if self.is_exact and len(self.coeffs) == 1:
            return QSeries.monomial(lead, -m)
        order = self.order - 2 * m
        if order == EXACT:
            raise InfinitePrecisionRequired("inverse of a non-monomial polynomial needs a truncation order")
        n = order + m  # number of coefficients of the inverse, starting at -m
        a = self.coeffs
        inv = [0] * max(n, 0)
        for k in range(len(inv)):
            s = 1 if k == 0 else 0
            for i in range(1, min(k, len(a) - 1) + 1):
                s -= a[i] * inv[k - i]
            inv[k] = s * lead
        return QSeries(-m, inv, order)

    # -- comparison ---------------------------------------------------
    def eq_to_order(self, other: QSeries, order: int) -> bool:
        if order > self.order or order > other.order:
            raise InsufficientOrder(f"requested order {order} exceeds {min(self.order, other.order)}")
        return self.first_difference(other, order) is None

    def first_difference(self, other: QSeries, order: int | float | None = None) -> int | None:
        """Smallest exponent below ``order`` where the two series differ, else None."""
        if order is None:
            order = min(self.order, other.order)
        diff = (self - other).truncate(order)
        return diff.min_exp if diff.coeffs else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.min_exp, self.coeffs, self.order) == (other.min_exp, other.coeffs, other.order)

    def __hash__(self) -> int:
        return hash((self.min_exp, self.coeffs, self.order))

    # -- evaluation / involution ---------------------------------------
    def evaluate(self, q: float) -> float:
        """Evaluate the stored terms at a positive real q (q^{1/2} taken positive)."""
        if q <= 0:
            raise ValueError("evaluation needs q > 0")
        return math.fsum(c * q ** (e / 2) for e, c in self.terms())

    def iota(self) -> QSeries:
        """Substitute q^{1/2} -> q^{-1/2}; only defined on Laurent polynomials."""
        if not self.is_exact:
            raise InfinitePrecisionRequired("q^{1/2} -> q^{-1/2} needs an exact Laurent polynomial")
        return QSeries.from_terms({-e: c for e, c in self.terms()})

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        body = ", ".join(f"{c}*q^({e}/2)" for e, c in self.terms()) or "0"
        if self.is_exact:
            return body
        return f"{body} + O(q^({self.order}/2))"

    @classmethod
    def from_text(cls, text: str) -> QSeries:
        text = text.strip()
        m = re.fullmatch(r"(.*?)(?:\s*\+\s*O\(q\^\((-?\d+)/2\)\))?", text, re.S)
        body, order = m.group(1).strip(), m.group(2)
        order = EXACT if order is None else int(order)
        if body == "0":
            return cls.zero(order)
        terms: dict[int, int] = {}
        for part in body.split(","):
            tm = re.fullmatch(r"\s*(-?\d+)\*q\^\((-?\d+)/2\)\s*", part)
            if not tm:
                raise ParseError(f"bad series term {part!r}")
            terms[int(tm.group(2))] = int(tm.group(1))
        return cls.from_terms(terms, order)

    def pretty(self) -> str:
        """Human-readable form, e.g. ``1 - q - 2*q^2 + O(q^5)``."""

        def power(e):
            if e == 0:
                return ""
            if e % 2:
                return f"q^({e}/2)"
            return "q" if e == 2 else f"q^{e // 2}"

        parts = []
        for e, c in self.terms():
            p = power(e)
            mag = abs(c)
            if not p:
                s = str(mag)
            elif mag == 1:
                s = p
            else:
                s = f"{mag}*{p}"
            parts.append(("-" if c < 0 else "+", s))
        if not parts:
            out = "0"
        else:
            out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            for sign, s in parts[1:]:
                out += f" {sign} {s}"
        if not self.is_exact:
            out += f" + O({power(self.order) or '1'})"
        return out

    def __repr__(self) -> str:
        return f"QSeries({self.pretty()})"
