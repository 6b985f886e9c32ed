from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbigenus.errors import NonPositiveShift, NonUnitLeadingTerm, UnsupportedDenominator
from orbigenus.exactnum import cyc_root_of_unity
from orbigenus.series import (
    BiLaurent,
    QSeries,
    RationalFunction,
    laurent_arith,
    qseries_geometric,
    qseries_invert_unit,
    qseries_is_t_constant,
    qseries_mul,
    ratfun_reduce,
)

t = BiLaurent.monomial(1)
zeta = BiLaurent.monomial(0, 1)
one = BiLaurent.one()


def mono(a=0, b=0, c=1):
    return BiLaurent.monomial(a, b, c)


def test_laurent_examples():
    h = mono(Fraction(1, 2))
    hi = mono(Fraction(-1, 2))
    assert laurent_arith("mul", h - hi, h + hi) == t - t.monomial_inverse()
    x = t * 3 + zeta - 2
    assert laurent_arith("add", x, laurent_arith("neg", x)).is_zero()
    zi = zeta.monomial_inverse()
    ti = t.monomial_inverse()
    assert (one - zeta * t) * (one - zi * ti) == BiLaurent.constant(2) - zeta * t - zi * ti


def test_reduce_examples():
    assert ratfun_reduce(t * t - one, t - one) == RationalFunction(t + one)
    r = ratfun_reduce((one + zeta) * (t - one), t - one)
    assert r.den.is_one() and r.num == one + zeta
    r = ratfun_reduce(one, t)
    assert r.den.is_one() and r.num == t.monomial_inverse()


def test_reduce_fractional_exponents():
    # (1 - t^(2/3)) / (1 - t^(1/3)) = 1 + t^(1/3)
    r = ratfun_reduce(one - mono(Fraction(2, 3)), one - mono(Fraction(1, 3)))
    assert r.den.is_one() and r.num == one + mono(Fraction(1, 3))


def test_reduce_cyclotomic_coefficients():
    w = cyc_root_of_unity(1, 3)
    # (1 - t^3) / (1 - w t) = 1 + w t + w^2 t^2
    r = ratfun_reduce(one - t**3, one - t * w)
    assert r.den.is_one()
    assert r.num == one + t * w + t * t * (w * w)


def test_unsupported_denominator():
    with pytest.raises(UnsupportedDenominator):
        RationalFunction(one, one - t * zeta)


def test_ratfun_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(one, BiLaurent())


def test_qseries_examples():
    q1 = QSeries.from_fractions({0: 1, 1: 1}, 3)
    q2 = QSeries.from_fractions({0: 1, 1: -1}, 3)
    assert qseries_mul(q1, QSeries.constant(1, 3)) == q1
    assert qseries_mul(q1, q2) == QSeries.from_fractions({0: 1, 2: -1}, 3)
    third = Fraction(1, 3)
    a = QSeries.from_fractions({0: 1, third: t}, 1)
    b = QSeries.from_fractions({0: 1, third: -t}, 1)
    assert qseries_mul(a, b) == QSeries.from_fractions({0: 1, 2 * third: -(t * t)}, 1, 3)


def test_geometric_examples():
    assert qseries_geometric(one, 1, 3) == QSeries.from_fractions({0: 1, 1: 1, 2: 1, 3: 1}, 3)
    half = Fraction(1, 2)
    assert qseries_geometric(t, half, 1) == QSeries.from_fractions({0: 1, half: t, 1: t * t}, 1)
    c = zeta * t.monomial_inverse()
    assert qseries_geometric(c, 2, 3) == QSeries.from_fractions({0: 1, 2: c}, 3)
    with pytest.raises(NonPositiveShift):
        qseries_geometric(t, 0, 3)


def test_invert_examples():
    inv = qseries_invert_unit(QSeries.from_fractions({0: 1, 1: -1}, 4))
    assert inv == QSeries.from_fractions({e: 1 for e in range(5)}, 4)
    assert qseries_invert_unit(QSeries.constant(1, 2)) == QSeries.constant(1, 2)
    inv = qseries_invert_unit(QSeries.constant(RationalFunction(one - t), 0))
    assert inv.coefficient(0) == RationalFunction(one, one - t)
    with pytest.raises(NonUnitLeadingTerm):
        qseries_invert_unit(QSeries.from_fractions({1: 1}, 2))


def test_constancy_examples():
    rep = qseries_is_t_constant(QSeries.from_fractions({0: 1, 1: 2}, 2))
    assert rep.all_constant
    rep = qseries_is_t_constant(QSeries.from_fractions({0: one + zeta, 1: t}, 2))
    flags = [(o.q, o.is_constant) for o in rep.per_order]
    assert flags == [(0, True), (1, False)]
    assert rep.first_failure().q == 1


def test_json_round_trip():
    x = RationalFunction(one + zeta * mono(Fraction(1, 3), 0, cyc_root_of_unity(1, 6)), one - t)
    assert RationalFunction.from_json(x.to_json()) == x
    b = t * Fraction(2, 3) + zeta.monomial_inverse()
    assert BiLaurent.from_json(b.to_json()) == b


def test_zeta_specialization():
    w = one + zeta + zeta * zeta
    assert w.specialize_zeta(Fraction(1, 3)).is_zero()
    assert w.substitute_zeta(-2) == BiLaurent.constant(3)
    assert w.zeta_at_zero() == one


# property tests

coeffs = st.integers(-3, 3)


@st.composite
def laurents(draw, max_terms=3):
    n = draw(st.integers(0, max_terms))
    out = BiLaurent()
    for _ in range(n):
        a = Fraction(draw(st.integers(-4, 4)), draw(st.sampled_from([1, 2, 3])))
        b = draw(st.integers(-2, 2))
        c = draw(coeffs) * cyc_root_of_unity(draw(st.integers(0, 5)), 6)
        out = out + mono(a, b, c)
    return out


@settings(max_examples=150, deadline=None)
@given(laurents(), laurents(), laurents())
def test_laurent_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@st.composite
def t_polys(draw):
    """Polynomials in t with P(0) = 1 (separable denominators)."""
    deg = draw(st.integers(1, 3))
    p = one
    for k in range(1, deg + 1):
        p = p + t**k * draw(coeffs)
    return p


@settings(max_examples=100, deadline=None)
@given(laurents(), t_polys(), st.integers(1, 5))
def test_reduce_idempotent_and_scale_invariant(n, d, c):
    r = ratfun_reduce(n, d)
    assert ratfun_reduce(r.num, r.den) == r
    assert ratfun_reduce(r.num, r.den).den == r.den
    assert ratfun_reduce(n * c, d * c) == r


@settings(max_examples=100, deadline=None)
@given(laurents(), t_polys())
def test_reduce_cancels_common_factor(n, d):
    if n.is_zero():
        return
    r = ratfun_reduce(n * d, d)
    assert r.den.is_one()
    assert r.num == n


@st.composite
def qseries(draw, K=3):
    terms = {e: draw(laurents(2)) for e in range(0, K + 1)}
    return QSeries(terms, 1, K)


@settings(max_examples=60, deadline=None)
@given(qseries(), qseries(), qseries())
def test_qseries_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(
    st.integers(-3, 3),
    st.integers(-2, 2),
    st.integers(0, 5),
    st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4),
    st.integers(1, 4),
)
def test_geometric_inverts_one_minus(a, b, root, shift, K):
    c = mono(a, b, cyc_root_of_unity(root, 6))
    g = qseries_geometric(c, shift, K)
    prod = g.mul_one_minus(c, shift.numerator)
    assert prod == QSeries.constant(1, K).lifted(g.q_denom)


@settings(max_examples=60, deadline=None)
@given(qseries(), t_polys())
def test_invert_unit(a, lead):
    terms = dict(a.terms)
    terms[0] = RationalFunction(lead)
    a = QSeries(terms, 1, a.order)
    assert qseries_invert_unit(a) * a == QSeries.constant(1, a.order)
