"""Tetrahedron index I_Delta(m, e), its symmetric form J(a, b, c) and identities."""
from __future__ import annotations

import decimal
import math
from functools import lru_cache

from .errors import NonConvergent
from .qseries import QSeries, neg_half_power


def q_pochhammer(n: int, order: int | float) -> QSeries:
    """(q;q)_n = prod_{i=1}^n (1 - q^i), truncated to ``order``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = QSeries.one(order)
    for i in range(1, n + 1):
        result = result * QSeries.from_terms({0: 1, 2 * i: -1})
    return result


@lru_cache(maxsize=4096)
def _inv_poch_coeffs(n: int, nterms: int) -> tuple[int, ...]:
    # 1/(q;q)_n counts partitions with parts <= n; coefficients in powers of q.
    if n == 0:
        return (1,) + (0,) * (nterms - 1)
    prev = _inv_poch_coeffs(n - 1, nterms)
    out = list(prev)
    for k in range(n, nterms):
        out[k] += out[k - n]
    return tuple(out)


def inverse_q_pochhammer(n: int, order: int) -> QSeries:
    """1/(q;q)_n truncated to half-order ``order``."""
    nterms = max(0, (order + 1) // 2)
    dense = [0] * (2 * nterms)
    dense[::2] = _inv_poch_coeffs(n, nterms)
    return QSeries(0, dense, order)


def _inv_product(n1: int, n2: int, nterms: int) -> list[int]:
    a = _inv_poch_coeffs(n1, nterms)
    b = _inv_poch_coeffs(n2, nterms)
    out = [0] * nterms
    for i, x in enumerate(a):
        if x:
            for j in range(nterms - i):
                out[i + j] += x * b[j]
    return out


@lru_cache(maxsize=1 << 16)
def tet_index(m: int, e: int, order: int) -> QSeries:
    """I_Delta(m, e) to half-order ``order``.

    Sum over n >= max(-e, 0) of (-1)^n q^{n(n+1)/2 - (n + e/2) m} / ((q;q)_n (q;q)_{n+e}).
    The n-th summand starts at half-exponent n(n+1) - (2n+e)m, a convex quadratic
    in n that increases once n >= |m|.
    """
    coeffs: dict[int, int] = {}
    n = max(-e, 0)
    while True:
        h = n * (n + 1) - (2 * n + e) * m
        if h >= order:
            if n >= abs(m):
                break
        else:
            nterms = (order - h + 1) // 2
            sign = -1 if n % 2 else 1
            for k, c in enumerate(_inv_product(n, n + e, nterms)):
                if c:
                    ex = h + 2 * k
                    coeffs[ex] = coeffs.get(ex, 0) + sign * c
        n += 1
    return QSeries.from_terms(coeffs, order)


def j_index(a: int, b: int, c: int, order: int) -> QSeries:
    """J(a, b, c) = (-q^{1/2})^{-b} I_Delta(b - c, a - b), to half-order ``order``."""
    sign, h = neg_half_power(-b)
    return tet_index(b - c, a - b, order - h).shift(h) * sign


def delta_triple(a: int, b: int, c: int) -> int:
    return a * b + b * c + c * a


def j_degree(a: int, b: int, c: int) -> int:
    """Leading half-exponent of J(a, b, c): delta(a-m, b-m, c-m) - m with m = min."""
    m = min(a, b, c)
    return delta_triple(a - m, b - m, c - m) - m


def tet_index_numeric(m: int, e: int, q: float, tol: float = 1e-14, max_terms: int = 10_000) -> float:
    """Evaluate I_Delta(m, e) at a real q in (0, 1) or (1, inf) by partial sums.

    For q > 1 the summands grow enormously before they decay and the partial
    sums cancel, so a float pass over log-magnitudes first finds the stopping
    n and the largest summand, and the sum is then carried out in decimal
    arithmetic with enough digits to absorb the cancellation.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if q == 1:
        raise NonConvergent("the tetrahedron index does not converge at q = 1")
    n0 = max(-e, 0)
    logq = math.log(q)
    log_tol = math.log(tol)
    n = n0
    h = n * (n + 1) - (2 * n + e) * m
    log_mag = h / 2 * logq - _log_abs_poch(n, q) - _log_abs_poch(n + e, q)
    peak = log_mag
    small = 0
    for _ in range(max_terms):
        peak = max(peak, log_mag)
        small = small + 1 if log_mag < log_tol else 0
        if small >= 3 and n >= abs(m):
            break
        log_mag += (n + 1 - m) * logq - math.log(abs(1 - q ** (n + 1))) - math.log(abs(1 - q ** (n + 1 + e)))
        n += 1
    else:
        raise NonConvergent(f"no convergence within {max_terms} terms at q = {q}")
    digits = int((peak - log_tol) / math.log(10)) + 25
    with decimal.localcontext() as ctx:
        ctx.prec = max(digits, 30)
        Q = decimal.Decimal(q)
        term = (-1) ** n0 * Q.sqrt() ** h / (_dec_poch(n0, Q) * _dec_poch(n0 + e, Q))
        total = term
        for k in range(n0, n):
            term = -term * Q ** (k + 1 - m) / ((1 - Q ** (k + 1)) * (1 - Q ** (k + 1 + e)))
            total += term
        return float(total)


def _dec_poch(n: int, Q: decimal.Decimal) -> decimal.Decimal:
    out = decimal.Decimal(1)
    for i in range(1, n + 1):
        out *= 1 - Q**i
    return out


def _log_abs_poch(n: int, q: float) -> float:
    return sum(math.log(abs(1 - q**i)) for i in range(1, n + 1))


def _pruned_k_sum(term_degree, term_value, order: int, window: int = 3) -> QSeries:
    """Sum term_value(k) over k in Z, skipping k whose degree reaches ``order``.

    Scans outward from 0 and stops on each side after ``window`` consecutive
    pruned k once the degree has started growing.
    """
    total = QSeries.zero(order)
    for step in (1, -1):
        k = 0 if step == 1 else -1
        pruned = 0
        last = None
        while pruned < window:
            d = term_degree(k)
            if d < order:
                total = total + term_value(k, d)
                pruned = 0
            elif last is not None and d >= last:
                pruned += 1
            last = d
            k += step
            if abs(k) > 10_000:
                raise NonConvergent("identity sum did not terminate")
    return total


def pentagon_lhs(a: int, b: int, c: int, d: int, e: int, f: int, order: int) -> QSeries:
    """sum_k q^k J(k, a+f, b+d) J(k, a+e, c+d) J(k, b+e, c+f) to half-order ``order``."""
    args = lambda k: ((k, a + f, b + d), (k, a + e, c + d), (k, b + e, c + f))

    def degree(k):
        return 2 * k + sum(j_degree(*t) for t in args(k))

    def value(k, _deg):
        ts = args(k)
        degs = [j_degree(*t) for t in ts]
        prod = QSeries.one()
        for i, t in enumerate(ts):
            prod = prod * j_index(*t, order - 2 * k - (sum(degs) - degs[i]))
        return prod.shift(2 * k)

    return _pruned_k_sum(degree, value, order)


def quadratic_lhs(a: int, b: int, c: int, d: int, order: int) -> QSeries:
    """sum_k q^k J(a+k, c, d) J(b+k, c, d) to half-order ``order``."""

    def degree(k):
        return 2 * k + j_degree(a + k, c, d) + j_degree(b + k, c, d)

    def value(k, _deg):
        d1, d2 = j_degree(a + k, c, d), j_degree(b + k, c, d)
        x = j_index(a + k, c, d, order - 2 * k - d2)
        y = j_index(b + k, c, d, order - 2 * k - d1)
        return (x * y).shift(2 * k)

    return _pruned_k_sum(degree, value, order)
