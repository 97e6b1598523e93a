import math

import pytest
from hypothesis import given, strategies as st

from index3d.errors import InfinitePrecisionRequired, InsufficientOrder, LeadingCoefficientNotUnit, ParseError
from index3d.qseries import EXACT, QSeries, neg_half_power

ORDER = 20


@st.composite
def series(draw, order=ORDER):
    terms = draw(st.dictionaries(st.integers(-6, order - 1), st.integers(-5, 5), max_size=8))
    return QSeries.from_terms(terms, order)


@st.composite
def unit_series(draw):
    lead = draw(st.sampled_from([1, -1]))
    m = draw(st.integers(-4, 4))
    rest = draw(st.dictionaries(st.integers(m + 1, m + 10), st.integers(-3, 3), max_size=5))
    return QSeries.from_terms({m: lead, **rest}, m + 16)


def test_normalization_drops_zeros_and_terms_past_order():
    s = QSeries(-2, [0, 0, 3, 0, 5, 7, 0], 3)
    assert s.min_exp == 0
    assert s.coeffs == (3, 0, 5)
    assert list(s.terms()) == [(0, 3), (2, 5)]


def test_zero_valuation_is_its_order():
    assert QSeries.zero(7).valuation == 7
    assert QSeries.zero().is_zero


def test_coefficient_beyond_order_raises():
    s = QSeries.from_terms({0: 1}, 4)
    assert s.coefficient(3) == 0
    with pytest.raises(InsufficientOrder):
        s.coefficient(4)


def test_product_order_tracks_valuations():
    a = QSeries.from_terms({2: 1}, 10)
    b = QSeries.from_terms({-1: 1, 0: 1}, 6)
    assert (a * b).order == min(10 - 1, 6 + 2)


def test_exact_times_exact_stays_exact():
    a = QSeries.from_terms({0: 1, 2: -1})
    assert (a * a).is_exact
    assert dict((a * a).terms()) == {0: 1, 2: -2, 4: 1}


def test_neg_half_power():
    assert neg_half_power(3) == (-1, 3)
    assert neg_half_power(-2) == (1, -2)


def test_invert_unit_of_exact_monomial_is_exact():
    inv = QSeries.monomial(-1, 3).invert_unit()
    assert inv.is_exact and dict(inv.terms()) == {-3: -1}


def test_invert_errors():
    with pytest.raises(LeadingCoefficientNotUnit):
        QSeries.from_terms({0: 2}, 5).invert_unit()
    with pytest.raises(InfinitePrecisionRequired):
        QSeries.from_terms({0: 1, 2: 1}).invert_unit()


def test_eq_to_order_needs_enough_precision():
    a = QSeries.from_terms({0: 1, 4: 1}, 6)
    b = QSeries.from_terms({0: 1, 5: 2}, 8)
    assert a.eq_to_order(b, 4)
    assert not a.eq_to_order(b, 6)
    with pytest.raises(InsufficientOrder):
        a.eq_to_order(b, 7)


def test_pretty_and_text_forms():
    s = QSeries.from_terms({0: 1, 2: -1, 4: -2, 5: 3}, 10)
    assert s.pretty() == "1 - q - 2*q^2 + 3*q^(5/2) + O(q^5)"
    assert s.to_text() == "1*q^(0/2), -1*q^(2/2), -2*q^(4/2), 3*q^(5/2) + O(q^(10/2))"
    assert QSeries.zero(3).pretty() == "0 + O(q^(3/2))"


def test_from_text_rejects_garbage():
    with pytest.raises(ParseError):
        QSeries.from_text("1*q^(1/2), banana")


def test_iota_needs_exact_series():
    assert dict(QSeries.from_terms({1: 2, -3: 1}).iota().terms()) == {-1: 2, 3: 1}
    with pytest.raises(InfinitePrecisionRequired):
        QSeries.from_terms({1: 2}, 4).iota()


def test_evaluate():
    s = QSeries.from_terms({0: 1, 1: 2})
    assert math.isclose(s.evaluate(4.0), 5.0)
    with pytest.raises(ValueError):
        s.evaluate(0)


@given(series(), series(), series())
def test_ring_axioms_to_order(a, b, c):
    assert (a * b).first_difference(b * a) is None
    assert ((a * b) * c).first_difference(a * (b * c)) is None
    assert (a * (b + c)).first_difference(a * b + a * c) is None
    assert (a - a).first_difference(QSeries.zero()) is None


@given(series())
def test_text_round_trip(a):
    assert QSeries.from_text(a.to_text()) == a


@given(unit_series())
def test_inverse_round_trip(a):
    prod = a * a.invert_unit()
    assert prod.order == a.order - a.min_exp
    assert prod.first_difference(QSeries.one()) is None


@given(series(), st.integers(-10, 10))
def test_shift_commutes_with_product(a, h):
    b = QSeries.from_terms({0: 1, 3: -2}, 9)
    assert (a.shift(h) * b).first_difference((a * b).shift(h)) is None


def test_exact_constant():
    assert EXACT == math.inf
    assert QSeries.one().order == EXACT


def test_geometric_inverse():
    inv = QSeries.from_terms({0: 1, 2: -1}, 8).invert_unit()
    assert inv == QSeries.from_terms({0: 1, 2: 1, 4: 1, 6: 1}, 8)
    assert QSeries.one().invert_unit() == QSeries.one()


def test_monomial_and_add_examples():
    assert QSeries.monomial(0, 5, 20).is_zero
    s = QSeries.from_terms({0: 1, 2: -1}, 10) + QSeries.from_terms({2: 1}, 8)
    assert s == QSeries.from_terms({0: 1}, 8)
    assert (QSeries.monomial(1, 1) + QSeries.monomial(-1, 1)).is_zero


@given(series(), series(), st.integers(0, ORDER))
def test_order_tracking_is_conservative(a, b, cut):
    # truncating first never yields information that differs from truncating after
    early = a.truncate(cut) * b.truncate(cut)
    late = a * b
    assert early.order <= late.order
    assert early.first_difference(late) is None
