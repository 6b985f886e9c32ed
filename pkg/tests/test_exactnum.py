import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbigenus.errors import DivisionByZero, IncompatibleModulus
from orbigenus.exactnum import (
    Cyclotomic,
    cyc_arith,
    cyc_lift,
    cyc_root_of_unity,
    cyc_to_complex,
    cyclotomic_polynomial,
    euler_phi,
    root_of_unity,
)


def z(a, M):
    return cyc_root_of_unity(a, M)


def test_examples():
    assert cyc_arith("add", z(1, 3), z(2, 3)) == Cyclotomic.rational(-1)
    assert cyc_arith("mul", z(1, 8), z(7, 8)) == 1
    assert cyc_arith("inv", Cyclotomic.rational(2)) == Cyclotomic.rational(Fraction(1, 2))


def test_lift():
    assert cyc_lift(Cyclotomic.rational(-1, 2), 4) == z(2, 4)
    assert cyc_lift(z(1, 3), 6) == z(2, 6)
    with pytest.raises(IncompatibleModulus):
        cyc_lift(z(1, 3), 4)


def test_to_complex():
    assert cyc_to_complex(Cyclotomic.one()) == 1
    assert abs(cyc_to_complex(z(1, 4)) - 1j) < 1e-12
    assert abs(cyc_to_complex(z(1, 6)) - complex(0.5, 3**0.5 / 2)) < 1e-12


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for M in range(1, 40):
        assert len(cyclotomic_polynomial(M)) - 1 == euler_phi(M)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Cyclotomic.zero(5).inverse()
    with pytest.raises(ZeroDivisionError):
        z(1, 5) / (z(1, 3) + z(2, 3) + 1)


@pytest.mark.parametrize("M", range(1, 31))
def test_roots_have_order_dividing_M(M):
    for a in range(M):
        assert z(a, M) ** M == 1


@pytest.mark.parametrize("M", range(1, 40))
def test_root_sum(M):
    s = sum((z(a, M) for a in range(M)), Cyclotomic.zero())
    assert s == (1 if M == 1 else 0)


def test_root_of_unity_reduces_fraction():
    assert root_of_unity(Fraction(2, 6), 12) == z(4, 12)
    assert root_of_unity(Fraction(-1, 4), 8) == z(6, 8)
    with pytest.raises(IncompatibleModulus):
        root_of_unity(Fraction(1, 5), 12)


def test_hash_consistent_with_rationals():
    assert hash(Cyclotomic.rational(3, 7)) == hash(Cyclotomic.rational(3, 4))
    assert Cyclotomic.rational(3, 7) == Cyclotomic.rational(3, 4)
    assert z(2, 4) == Cyclotomic.rational(-1)


moduli = st.integers(1, 60)


@st.composite
def elements(draw, M=None):
    M = M or draw(moduli)
    n = draw(st.integers(1, 4))
    out = Cyclotomic.zero(M)
    for _ in range(n):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        out = out + c * z(draw(st.integers(0, M - 1)), M)
    return out


@st.composite
def triples(draw):
    M = draw(moduli)
    return draw(elements(M)), draw(elements(M)), draw(elements(M))


@settings(max_examples=200, deadline=None)
@given(triples())
def test_field_axioms(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a:
        assert a * a.inverse() == 1


@settings(max_examples=1000, deadline=None)
@given(elements())
def test_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert a.inverse().inverse() == a


@settings(max_examples=200, deadline=None)
@given(elements(), elements())
def test_to_complex_homomorphism(a, b):
    ca, cb = cyc_to_complex(a), cyc_to_complex(b)
    assert cmath.isclose(cyc_to_complex(a + b), ca + cb, abs_tol=1e-10)
    assert cmath.isclose(cyc_to_complex(a * b), ca * cb, abs_tol=1e-10, rel_tol=1e-10)


@settings(max_examples=100, deadline=None)
@given(elements(), st.integers(1, 4))
def test_lift_preserves_value(a, k):
    b = a.lift(a.modulus * k)
    assert b == a
    assert cmath.isclose(cyc_to_complex(b), cyc_to_complex(a), abs_tol=1e-10)
