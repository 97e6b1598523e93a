"""The 3D-index of quantum-torus elements over a 1-efficient triangulation.

For a Weyl monomial [Z^S0] the index is

    sum over k in Z^{N-r} of (-q^{1/2})^{2 sum k} q^{omega(S0, S(k))/2}
        prod_j J(j-th triple of -S0 + S(k)),

with S(k) the combination of the independent edge rows. The lattice is walked
in L-infinity shells around 0; a summand is evaluated only if its leading
degree is below the target order, and the walk stops after ``shell_window``
consecutive shells with no such summand.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InsufficientOrder, LengthMismatch, NonIntegralCharge, RadiusExceeded
from .qseries import QSeries
from .qtorus import ExponentVector, TorusElement, omega, tetrahedron_vector, unit_vector
from .tetindex import j_degree, j_index
from .triangulation import Triangulation, edge_combination


@dataclass(frozen=True)
class SummationOptions:
    order: int
    shell_window: int = 3
    max_radius: int = 200

    def __post_init__(self):
        if self.shell_window < 1 or self.max_radius < 1:
            raise ValueError("shell_window and max_radius must be at least 1")

    def with_order(self, order: int) -> SummationOptions:
        return SummationOptions(order, self.shell_window, self.max_radius)


@dataclass
class IndexResult:
    series: QSeries
    radius: int = 0
    n_terms: int = 0
    termination: str = "heuristic"

    def to_dict(self) -> dict:
        return {
            "min_exp": self.series.min_exp,
            "coefficients": list(self.series.coeffs),
            "order": self.series.order,
            "text": self.series.to_text(),
            "radius": self.radius,
            "n_terms": self.n_terms,
            "termination": self.termination,
        }


def _shell(dim: int, radius: int) -> Iterator[tuple[int, ...]]:
    if dim == 0:
        if radius == 0:
            yield ()
        return
    for k in itertools.product(range(-radius, radius + 1), repeat=dim):
        if max(map(abs, k), default=0) == radius:
            yield k


def _triples(v: Sequence[int]) -> list[tuple[int, int, int]]:
    return [tuple(v[j : j + 3]) for j in range(0, len(v), 3)]


def _naive_product(T: Sequence[int], order: int) -> QSeries:
    """prod_j J(j-th triple of T), each factor at the order left by the others."""
    triples = _triples(T)
    degs = [j_degree(*t) for t in triples]
    total = sum(degs)
    prod = QSeries.one()
    for t, d in zip(triples, degs):
        prod = prod * j_index(*t, order - (total - d))
    return prod.truncate(order)


def _check_length(tri: Triangulation, S0: Sequence[int]) -> None:
    if len(S0) != tri.dim:
        raise LengthMismatch(f"exponent vector of length {len(S0)} on {tri.num_tetrahedra} tetrahedra")


def evaluate_monomial(tri: Triangulation, S0: Sequence[int], opts: SummationOptions) -> IndexResult:
    _check_length(tri, S0)
    S0 = tuple(S0)
    order = opts.order
    dim = len(tri.independent_edges)
    total = QSeries.zero(order)
    n_terms = 0
    empty = 0
    radius = 0
    while True:
        if radius > opts.max_radius:
            raise RadiusExceeded(
                f"index sum still contributing at radius {opts.max_radius}; "
                "the triangulation may not be 1-efficient"
            )
        contributed = False
        for k in _shell(dim, radius):
            S = edge_combination(tri, k)
            T = [s - s0 for s0, s in zip(S0, S)]
            pre = 2 * sum(k) + omega(S0, S)
            deg = pre + sum(j_degree(*t) for t in _triples(T))
            if deg >= order:
                continue
            contributed = True
            n_terms += 1
            total = total + _naive_product(T, order - pre).shift(pre)
        empty = 0 if contributed else empty + 1
        if empty >= opts.shell_window:
            break
        radius += 1
    return IndexResult(total.truncate(order), radius, n_terms)


def index_monomial(tri: Triangulation, S0: Sequence[int], opts: SummationOptions) -> QSeries:
    return evaluate_monomial(tri, S0, opts).series


def evaluate_element(tri: Triangulation, u: TorusElement, opts: SummationOptions) -> IndexResult:
    if u.ntets != tri.num_tetrahedra:
        raise LengthMismatch(f"element on {u.ntets} tetrahedra, triangulation has {tri.num_tetrahedra}")
    order = opts.order
    total = QSeries.zero(order)
    radius = n_terms = 0
    for k, c in u:
        if c.valuation >= order:
            continue
        res = evaluate_monomial(tri, k, opts.with_order(order - c.min_exp))
        radius = max(radius, res.radius)
        n_terms += res.n_terms
        total = total + c * res.series
    if total.order < order:
        raise InsufficientOrder(f"coefficients of the element only determine the index to q^({total.order}/2)")
    return IndexResult(total.truncate(order), radius, n_terms)


def index_element(tri: Triangulation, u: TorusElement, opts: SummationOptions) -> QSeries:
    return evaluate_element(tri, u, opts).series


def index_element_edge_sum(tri: Triangulation, u: TorusElement, opts: SummationOptions) -> QSeries:
    """Cross-check path: sum over k of I_N(prod_i (q E_i^{-1})^{k_i} * u).

    I_N is the plain product of J over the triples of the negated exponent;
    the edge products are formed with the torus multiplication, so this path
    shares no prefactor bookkeeping with ``evaluate_monomial``.
    """
    order = opts.order
    n = tri.num_tetrahedra
    total = QSeries.zero(order)
    dim = len(tri.independent_edges)
    inv_edges = [TorusElement.weyl(tuple(-x for x in row), QSeries.monomial(1, 2)) for row in tri.independent_rows]
    empty = 0
    radius = 0
    while empty < opts.shell_window:
        if radius > opts.max_radius:
            raise RadiusExceeded(f"edge-sum path still contributing at radius {opts.max_radius}")
        contributed = False
        for k in _shell(dim, radius):
            E = TorusElement.unit(n)
            for e, ki in zip(inv_edges, k):
                E = E * (e ** ki)
            for S, c in E * u:
                T = [-x for x in S]
                deg = c.min_exp + sum(j_degree(*t) for t in _triples(T))
                if deg >= order:
                    continue
                contributed = True
                total = total + c * _naive_product(T, order - c.min_exp)
        empty = 0 if contributed else empty + 1
        radius += 1
    return total.truncate(order)


def dgg_index(tri: Triangulation, cusp: int, m, e: int, opts: SummationOptions) -> QSeries:
    """Index of the peripheral monomial with charges (m, e): S0 = -m L + e M."""
    if not 0 <= cusp < tri.num_cusps:
        raise IndexError(f"cusp {cusp} out of range 0..{tri.num_cusps - 1}")
    m = Fraction(m)
    if (2 * m).denominator != 1:
        raise NonIntegralCharge(f"m = {m} is not a half-integer")
    S0 = []
    for l, mu in zip(tri.longitude_rows[cusp], tri.meridian_rows[cusp]):
        x = -m * l + e * mu
        if x.denominator != 1:
            raise NonIntegralCharge(f"-m*L + e*M has non-integral entry {x} for m = {m}, e = {e}")
        S0.append(int(x))
    return index_monomial(tri, S0, opts)


# -- quotient relations -----------------------------------------------------------

@dataclass
class RelationCheck:
    name: str
    passed: bool
    first_difference: int | None = None


@dataclass
class RelationReport:
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tail = "" if c.passed else f" (first difference at q^({c.first_difference}/2))"
            out.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}{tail}")
        return out


def _compare(name: str, lhs: QSeries, rhs: QSeries, order: int) -> RelationCheck:
    diff = lhs.first_difference(rhs, order)
    return RelationCheck(name, diff is None, diff)


def check_quotient_relations(
    tri: Triangulation, S0: Sequence[int], opts: SummationOptions, all_edges: bool = True
) -> RelationReport:
    """Check the edge, central and Lagrangian relations at [Z^S0] to ``opts.order``.

    The edge relation is tested on every edge row by default, not only the
    independent ones, since the dependent rows are exactly what the summation
    never sees.
    """
    _check_length(tri, S0)
    n = tri.num_tetrahedra
    order = opts.order
    report = RelationReport()
    mono = TorusElement.weyl(S0)
    base = index_monomial(tri, S0, opts.with_order(order - 1))
    edges = range(len(tri.edge_rows)) if all_edges else tri.independent_edges
    for i in edges:
        lhs = index_element(tri, TorusElement.weyl(tri.edge_rows[i]) * mono, opts)
        rhs = base.truncate(order - 2).shift(2)
        report.checks.append(_compare(f"edge E{i}: I(E{i}*u) = q*I(u)", lhs, rhs, order))
    for j in range(n):
        lhs = index_element(tri, TorusElement.weyl(tetrahedron_vector(n, j)) * mono, opts)
        rhs = -base.shift(1)
        report.checks.append(_compare(f"central tet {j + 1}: I(Z Z' Z'' * u) = -q^(1/2)*I(u)", lhs, rhs, order))
    for j in range(n):
        lagr = (
            TorusElement.weyl(tuple(-x for x in unit_vector(n, j, 0)))
            + TorusElement.weyl(unit_vector(n, j, 2))
            - TorusElement.unit(n)
        )
        lhs = index_element(tri, mono * lagr, opts)
        report.checks.append(_compare(f"Lagrangian tet {j + 1}: I(u*(Z^-1 + Z'' - 1)) = 0", lhs, QSeries.zero(order), order))
    return report
