"""Neumann-Zagier gluing data: loading, validation and the edge lattice.

File format (JSON)::

    {
      "name": "4_1",
      "num_tetrahedra": 2,
      "num_cusps": 1,
      "edge_rows": [[2,1,0,2,1,0], [0,1,2,0,1,2]],
      "meridian_rows": [[1,0,0,0,0,-1]],
      "longitude_rows": [[1,1,1,1,-1,-3]],
      "independent_edges": [0],          optional
      "one_efficient": true,             user-asserted, never checked
      "no_nonperipheral_z2_homology": true   optional, default true
    }

Rows are exponent vectors (a_1, b_1, c_1, ..., a_N, b_N, c_N) of the gluing
equations. Peripheral rows are exponents of the squared variables, so the
monomial [Z^M] is the square of the meridian monomial and omega(L, M) = 2.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .errors import (
    ColumnSumViolation,
    HomologyHypothesisViolation,
    LengthMismatch,
    NegativeQuadCount,
    ParseError,
    RankDeficient,
    SymplecticViolation,
)
from .qtorus import ExponentVector, omega, tetrahedron_vector
from .tetindex import j_degree


@dataclass(frozen=True)
class Triangulation:
    name: str
    num_tetrahedra: int
    num_cusps: int
    edge_rows: tuple[ExponentVector, ...]
    meridian_rows: tuple[ExponentVector, ...]
    longitude_rows: tuple[ExponentVector, ...]
    independent_edges: tuple[int, ...]
    one_efficient: bool = True
    no_nonperipheral_z2_homology: bool = True
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return 3 * self.num_tetrahedra

    @property
    def independent_rows(self) -> tuple[ExponentVector, ...]:
        return tuple(self.edge_rows[i] for i in self.independent_edges)

    def to_dict(self) -> dict[str, Any]:
        doc = {
            "name": self.name,
            "num_tetrahedra": self.num_tetrahedra,
            "num_cusps": self.num_cusps,
            "edge_rows": [list(r) for r in self.edge_rows],
            "meridian_rows": [list(r) for r in self.meridian_rows],
            "longitude_rows": [list(r) for r in self.longitude_rows],
            "independent_edges": list(self.independent_edges),
            "one_efficient": self.one_efficient,
            "no_nonperipheral_z2_homology": self.no_nonperipheral_z2_homology,
        }
        doc.update(self.metadata)
        return doc

    def with_independent_edges(self, indices: Sequence[int]) -> Triangulation:
        tri = Triangulation(
            self.name, self.num_tetrahedra, self.num_cusps, self.edge_rows, self.meridian_rows,
            self.longitude_rows, tuple(indices), self.one_efficient, self.no_nonperipheral_z2_homology,
            self.metadata,
        )
        _check_independent(tri)
        return tri


# -- exact linear algebra ---------------------------------------------------

def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free integer elimination."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r]
        for i in range(r + 1, len(work)):
            f = work[i][col]
            if f:
                row = [p[col] * x - f * y for x, y in zip(work[i], p)]
                g = math.gcd(*row)
                work[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(work):
            break
    return r


def _tet_rows(width: int) -> list[ExponentVector]:
    return [tetrahedron_vector(width // 3, j) for j in range(width // 3)]


def edge_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of the rows modulo the tetrahedron vectors (1,1,1) of each block.

    The edge rows always satisfy sum_i E_i = 2 sum_j Delta_j, so their plain
    rank overcounts; the relevant count is in Q^{3N} / span(Delta_j).
    """
    if not rows:
        return 0
    tets = _tet_rows(len(rows[0]))
    return rank(list(rows) + tets) - len(tets)


def first_independent_subset(rows: Sequence[Sequence[int]]) -> list[int]:
    """Greedy (lexicographically first) maximal subset independent modulo tetrahedron vectors."""
    chosen: list[int] = []
    for i, row in enumerate(rows):
        if edge_rank([rows[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
    return chosen


# -- loading and validation ---------------------------------------------------

def _int_rows(doc: dict, key: str, count: int | None, width: int) -> tuple[ExponentVector, ...]:
    rows = doc.get(key)
    if not isinstance(rows, list):
        raise ParseError(f"field {key!r} must be a list of integer arrays")
    if count is not None and len(rows) != count:
        raise ParseError(f"field {key!r} has {len(rows)} rows, expected {count}")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != width:
            raise ParseError(f"field {key!r}: every row must have {width} entries")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(f"field {key!r}: entries must be integers")
        out.append(tuple(r))
    return tuple(out)


def from_dict(doc: Any, validate: bool = True) -> Triangulation:
    if not isinstance(doc, dict) or not doc:
        raise ParseError("triangulation document must be a non-empty JSON object")
    try:
        n = doc["num_tetrahedra"]
        r = doc["num_cusps"]
    except KeyError as err:
        raise ParseError(f"missing field {err.args[0]!r}") from None
    if not isinstance(n, int) or not isinstance(r, int) or n < 1 or r < 0:
        raise ParseError("num_tetrahedra and num_cusps must be positive integers")
    edges = _int_rows(doc, "edge_rows", n, 3 * n)
    meridians = _int_rows(doc, "meridian_rows", r, 3 * n)
    longitudes = _int_rows(doc, "longitude_rows", r, 3 * n)
    indep = doc.get("independent_edges")
    if indep is not None:
        if not isinstance(indep, list) or not all(isinstance(i, int) and 0 <= i < n for i in indep):
            raise ParseError("independent_edges must be a list of edge indices")
        indep = tuple(indep)
    known = {"name", "num_tetrahedra", "num_cusps", "edge_rows", "meridian_rows", "longitude_rows",
             "independent_edges", "one_efficient", "no_nonperipheral_z2_homology"}
    tri = Triangulation(
        name=str(doc.get("name", "")),
        num_tetrahedra=n,
        num_cusps=r,
        edge_rows=edges,
        meridian_rows=meridians,
        longitude_rows=longitudes,
        independent_edges=indep if indep is not None else tuple(first_independent_subset(edges)),
        one_efficient=bool(doc.get("one_efficient", False)),
        no_nonperipheral_z2_homology=bool(doc.get("no_nonperipheral_z2_homology", True)),
        metadata={k: v for k, v in doc.items() if k not in known},
    )
    if validate:
        validate_triangulation(tri)
    return tri


def load(path: str | Path, validate: bool = True) -> Triangulation:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None
    try:
        doc = json.loads(text) if text.strip() else None
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: invalid JSON ({err.msg})") from None
    return from_dict(doc, validate=validate)


def validation_report(tri: Triangulation) -> list[str]:
    """Run every check in order; returns the list of passed checks or raises the first failure."""
    report = []
    if not tri.no_nonperipheral_z2_homology:
        raise HomologyHypothesisViolation(f"{tri.name}: data flagged as having non-peripheral Z/2-homology")
    for i, row in enumerate(tri.edge_rows):
        for col, x in enumerate(row):
            if x < 0:
                raise NegativeQuadCount(f"edge row {i} has entry {x} at column {col}")
    report.append(f"edge rows nonnegative ({len(tri.edge_rows)} rows)")

    named = [(f"E{i}", row) for i, row in enumerate(tri.edge_rows)]
    for k, (m, l) in enumerate(zip(tri.meridian_rows, tri.longitude_rows)):
        named += [(f"M{k}", m), (f"L{k}", l)]
    for x in range(len(named)):
        for y in range(x + 1, len(named)):
            (nx, vx), (ny, vy) = named[x], named[y]
            expected = 0
            if nx[0] == "M" and ny[0] == "L" and nx[1:] == ny[1:]:
                expected = -2
            w = omega(vx, vy)
            if w != expected:
                raise SymplecticViolation(f"omega({nx}, {ny}) = {w}, expected {expected}")
    report.append(f"symplectic relations ({len(named)} vectors, omega(L,M) = 2 per cusp)")

    for col in range(tri.dim):
        s = sum(row[col] for row in tri.edge_rows)
        if s != 2:
            raise ColumnSumViolation(f"column {col} of the edge matrix sums to {s}, expected 2")
    report.append(f"edge column sums equal 2 ({tri.dim} columns)")

    full = edge_rank(tri.edge_rows)
    want = tri.num_tetrahedra - tri.num_cusps
    if full != want:
        raise RankDeficient(f"edge rows have rank {full}, expected N - r = {want}")
    _check_independent(tri)
    report.append(f"edge rank {full}; independent edges {list(tri.independent_edges)}")
    if not tri.one_efficient:
        report.append("warning: one_efficient is not asserted; index sums may not converge")
    return report


def _check_independent(tri: Triangulation) -> None:
    want = tri.num_tetrahedra - tri.num_cusps
    rows = tri.independent_rows
    if len(rows) != want or edge_rank(rows) != want:
        raise RankDeficient(f"independent_edges {list(tri.independent_edges)} are not {want} independent rows")
    if edge_rank(list(rows) + list(tri.edge_rows)) != want:
        raise RankDeficient("independent edges do not span the edge rows")


def validate_triangulation(tri: Triangulation) -> Triangulation:
    validation_report(tri)
    return tri


# -- lattice services -----------------------------------------------------------

def edge_combination(tri: Triangulation, k: Sequence[int]) -> ExponentVector:
    """S(k) = sum_i k_i E_i over the independent edges."""
    rows = tri.independent_rows
    if len(k) != len(rows):
        raise LengthMismatch(f"{len(k)} edge coefficients for {len(rows)} independent edges")
    out = [0] * tri.dim
    for ki, row in zip(k, rows):
        if ki:
            for c, x in enumerate(row):
                out[c] += ki * x
    return tuple(out)


def chi_of_combination(k: Sequence[int]) -> int:
    """Euler characteristic analogue of S(k): each edge solution contributes -2."""
    return -2 * sum(k)


def normalize_surface(S: Sequence[int]) -> tuple[ExponentVector, tuple[int, ...]]:
    """Translate by tetrahedron vectors so every triple has minimum 0."""
    out, shifts = [], []
    for j in range(0, len(S), 3):
        a, b, c = S[j : j + 3]
        m = min(a, b, c)
        out.extend((a - m, b - m, c - m))
        shifts.append(m)
    return tuple(out), tuple(shifts)


def summand_degree(tri: Triangulation, S0: Sequence[int], k: Sequence[int]) -> int:
    """Leading half-exponent of the k-th summand of the index of [Z^S0].

    -chi(S(k)) from (-q^{1/2})^{-chi}, omega(S0, S(k)) from q^{omega/2}, plus the
    degrees of the J factors of -S0 + S(k); all in half-units.
    """
    S = edge_combination(tri, k)
    T = [s - s0 for s0, s in zip(S0, S)]
    deg = -chi_of_combination(k) + omega(S0, S)
    for j in range(0, len(T), 3):
        deg += j_degree(T[j], T[j + 1], T[j + 2])
    return deg
