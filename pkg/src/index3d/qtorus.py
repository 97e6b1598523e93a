"""Even quantum torus on Z_j, Z'_j, Z''_j with Weyl-ordered monomials.

An exponent vector has length 3N, grouped (a_j, b_j, c_j) per tetrahedron; the
entries are powers of the squared variables Z = z^2, Z' = z'^2, Z'' = z''^2.
Products follow [Z^k][Z^l] = q^{omega(k,l)/2} [Z^{k+l}].
"""
from __future__ import annotations

from typing import Iterator, Mapping, Sequence

from .errors import LengthMismatch
from .qseries import QSeries

ExponentVector = tuple[int, ...]

def _check(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise LengthMismatch(f"exponent vectors of length {len(x)} and {len(y)}")
    if len(x) % 3:
        raise LengthMismatch(f"length {len(x)} is not a multiple of 3")


def omega(x: Sequence[int], y: Sequence[int]) -> int:
    """Skew form x^t D y, D block-diagonal with blocks ((0,1,-1),(-1,0,1),(1,-1,0))."""
    _check(x, y)
    total = 0
    for j in range(0, len(x), 3):
        a, b, c = x[j], x[j + 1], x[j + 2]
        a2, b2, c2 = y[j], y[j + 1], y[j + 2]
        total += a * (b2 - c2) + b * (c2 - a2) + c * (a2 - b2)
    return total


def delta_form(x: Sequence[int]) -> int:
    """Double-arc function sum_j (a_j b_j + b_j c_j + c_j a_j)."""
    return sum(x[j] * x[j + 1] + x[j + 1] * x[j + 2] + x[j + 2] * x[j] for j in range(0, len(x), 3))


def delta_bilinear(x: Sequence[int], y: Sequence[int]) -> float:
    """Polarization of delta_form: (1/2) x^t Dsym y."""
    _check(x, y)
    total = 0
    for j in range(0, len(x), 3):
        a, b, c = x[j : j + 3]
        a2, b2, c2 = y[j : j + 3]
        total += a * (b2 + c2) + b * (a2 + c2) + c * (a2 + b2)
    return total / 2


def unit_vector(ntets: int, tet: int, slot: int) -> ExponentVector:
    v = [0] * (3 * ntets)
    v[3 * tet + slot] = 1
    return tuple(v)


def tetrahedron_vector(ntets: int, tet: int) -> ExponentVector:
    v = [0] * (3 * ntets)
    v[3 * tet : 3 * tet + 3] = (1, 1, 1)
    return tuple(v)


def add_vectors(x: Sequence[int], y: Sequence[int]) -> ExponentVector:
    _check(x, y)
    return tuple(a + b for a, b in zip(x, y))


def scale_vector(s: int, x: Sequence[int]) -> ExponentVector:
    return tuple(s * a for a in x)


def iota_vector(x: Sequence[int]) -> ExponentVector:
    """(a_j, b_j, c_j) -> (-c_j, -b_j, -a_j): the exponent part of the chirality map."""
    out = []
    for j in range(0, len(x), 3):
        a, b, c = x[j : j + 3]
        out.extend((-c, -b, -a))
    return tuple(out)


class TorusElement:
    """Finite sum of Weyl-ordered monomials with QSeries coefficients."""

    __slots__ = ("ntets", "terms")

    def __init__(self, ntets: int, terms: Mapping[ExponentVector, QSeries] | None = None):
        self.ntets = ntets
        clean: dict[ExponentVector, QSeries] = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            if len(k) != 3 * ntets:
                raise LengthMismatch(f"exponent vector of length {len(k)} in a torus on {ntets} tetrahedra")
            if isinstance(c, int):
                c = QSeries.monomial(c, 0)
            if k in clean:
                c = clean[k] + c
            if c.is_zero:
                clean.pop(k, None)
                continue
            clean[k] = c
        self.terms = clean

    @classmethod
    def weyl(cls, k: Sequence[int], coeff: QSeries | int = 1) -> TorusElement:
        if len(k) % 3:
            raise LengthMismatch(f"length {len(k)} is not a multiple of 3")
        return cls(len(k) // 3, {tuple(k): coeff})

    @classmethod
    def unit(cls, ntets: int) -> TorusElement:
        return cls(ntets, {(0,) * (3 * ntets): 1})

    @classmethod
    def zero(cls, ntets: int) -> TorusElement:
        return cls(ntets)

    def __iter__(self) -> Iterator[tuple[ExponentVector, QSeries]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def _same(self, other: TorusElement) -> None:
        if self.ntets != other.ntets:
            raise LengthMismatch(f"torus elements on {self.ntets} and {other.ntets} tetrahedra")

    def __add__(self, other: TorusElement) -> TorusElement:
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TorusElement(self.ntets, out)

    def __neg__(self) -> TorusElement:
        return TorusElement(self.ntets, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: TorusElement) -> TorusElement:
        return self + (-other)

    def scale(self, s: QSeries | int) -> TorusElement:
        """Multiply every coefficient by a central scalar."""
        return TorusElement(self.ntets, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other: TorusElement | QSeries | int) -> TorusElement:
        if isinstance(other, (QSeries, int)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._same(other)
        out: dict[ExponentVector, QSeries] = {}
        for k, c in self.terms.items():
            for l, d in other.terms.items():
                kl = tuple(a + b for a, b in zip(k, l))
                coeff = (c * d).shift(omega(k, l))
                out[kl] = out[kl] + coeff if kl in out else coeff
        return TorusElement(self.ntets, out)

    def __rmul__(self, other: QSeries | int) -> TorusElement:
        if isinstance(other, (QSeries, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> TorusElement:
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (k, c), = self.terms.items()
            base = TorusElement(self.ntets, {tuple(-a for a in k): c.invert_unit()})
            n = -n
        else:
            base = self
        result = TorusElement.unit(self.ntets)
        for _ in range(n):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.ntets == other.ntets and self.terms == other.terms

    def iota(self) -> TorusElement:
        """Chirality involution: exponents by iota_vector, coefficients by q^{1/2} -> q^{-1/2}."""
        return TorusElement(self.ntets, {iota_vector(k): c.iota() for k, c in self.terms.items()})

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self:
            parts.append(f"({c.pretty()})*{format_monomial(k)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TorusElement({self.to_text()})"


_SLOT_NAMES = ("Z", "Zp", "Zpp")


def format_monomial(k: Sequence[int]) -> str:
    """Render an exponent vector in the expression syntax, e.g. ``Z1^-1*Zpp2``."""
    factors = []
    for i, e in enumerate(k):
        if e:
            name = f"{_SLOT_NAMES[i % 3]}{i // 3 + 1}"
            factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors) or "1"


def peripheral_skein_image(gamma: Sequence[int], d: int) -> TorusElement:
    """Image of K_gamma with multiplicity d: T_d(m + m^{-1}) = m^d + m^{-d} (2 when d = 0)."""
    if d < 0:
        raise ValueError("multiplicity must be nonnegative")
    ntets = len(gamma) // 3
    if d == 0:
        return TorusElement.unit(ntets).scale(2)
    up = scale_vector(d, gamma)
    return TorusElement.weyl(up) + TorusElement.weyl(scale_vector(-1, up))


def chebyshev_image(gamma: Sequence[int], d: int) -> TorusElement:
    """T_d(x) with x = m + m^{-1}, built from the recursion T_n = x T_{n-1} - T_{n-2}."""
    ntets = len(gamma) // 3
    x = TorusElement.weyl(gamma) + TorusElement.weyl(scale_vector(-1, gamma))
    prev, cur = TorusElement.unit(ntets).scale(2), x
    if d == 0:
        return prev
    for _ in range(d - 1):
        prev, cur = cur, x * cur - prev
    return cur
