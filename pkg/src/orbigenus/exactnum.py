"""Exact arithmetic in the cyclotomic fields Q(zeta_M).

An element of Q(zeta_M) is stored as a polynomial in zeta_M of degree below
phi(M), reduced modulo the M-th cyclotomic polynomial.  Coefficients are kept
as a tuple of integer numerators over one positive common denominator, which
keeps multiplication in plain integer arithmetic.

Rationals are :class:`fractions.Fraction` throughout the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DivisionByZero, IncompatibleModulus

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "cyc_root_of_unity",
    "root_of_unity",
    "cyc_arith",
    "cyc_lift",
    "cyc_to_complex",
    "as_fraction",
]


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# -- integer polynomial helpers (coefficient lists, low degree first) --------


def _divexact_int(num, den):
    """Exact quotient of monic-divisible integer polynomials."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple:
    """Integer coefficients of Phi_M, lowest degree first.

    Computed as (x^M - 1) divided by Phi_d for every proper divisor d of M.
    """
    if M < 1:
        raise ValueError("modulus must be positive")
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly = _divexact_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(M: int) -> int:
    return len(cyclotomic_polynomial(M)) - 1


@lru_cache(maxsize=None)
def _reduction_table(M: int) -> tuple:
    """x^j mod Phi_M for j < 2*phi(M) - 1, as integer vectors."""
    phi = cyclotomic_polynomial(M)
    deg = len(phi) - 1
    rows = []
    for j in range(max(2 * deg - 1, 1)):
        if j < deg:
            row = [0] * deg
            row[j] = 1
            rows.append(tuple(row))
            continue
        # multiply previous row by x and reduce
        prev = rows[-1]
        top = prev[-1]
        row = [0] + list(prev[:-1])
        if top:
            for i in range(deg):
                row[i] -= top * phi[i]
        rows.append(tuple(row))
    return tuple(rows)


def _reduce_int(coeffs, M):
    """Reduce an integer coefficient list modulo Phi_M."""
    deg = euler_phi(M)
    if len(coeffs) <= deg:
        return list(coeffs) + [0] * (deg - len(coeffs))
    table = _reduction_table(M)
    if len(coeffs) > len(table):
        # long input (root-of-unity powers, lifts): plain polynomial remainder
        phi = cyclotomic_polynomial(M)
        work = list(coeffs)
        for i in range(len(work) - 1, deg - 1, -1):
            c = work[i]
            if c:
                for j in range(deg + 1):
                    work[i - deg + j] -= c * phi[j]
        return work[:deg]
    out = list(coeffs[:deg])
    for j in range(deg, len(coeffs)):
        c = coeffs[j]
        if c:
            row = table[j]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return out


# -- rational polynomial helpers used for inversion -------------------------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _trim(a[: len(b) - 1])


def _psub_mul(a, q, b):
    """a - q*b over Fractions."""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _trim(out)


def _inverse_mod(a, M):
    """Inverse of the rational polynomial ``a`` modulo Phi_M (extended Euclid)."""
    phi = [Fraction(c) for c in cyclotomic_polynomial(M)]
    r0, r1 = phi, _trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub_mul(s0, q, s1)
    if not r1:
        raise DivisionByZero("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


# -- the field element -------------------------------------------------------


class Cyclotomic:
    """Immutable element of Q(zeta_M).

    Binary operations between elements of different moduli lift both operands
    to Q(zeta_lcm).  Plain ints and Fractions are accepted as operands and act
    as rational constants.
    """

    __slots__ = ("modulus", "_num", "_den", "_hash")

    def __init__(self, modulus: int, coefficients=()):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        fr = [as_fraction(c) for c in coefficients]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        ints = _reduce_int(ints, modulus)
        self._set(modulus, ints, den)

    def _set(self, modulus, ints, den):
        g = den
        for c in ints:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if g > 1:
            ints = [c // g for c in ints]
            den //= g
        if not any(ints):
            den = 1
        self.modulus = modulus
        self._num = tuple(ints)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, modulus, ints, den):
        obj = cls.__new__(cls)
        if den < 0:
            ints = [-c for c in ints]
            den = -den
        obj._set(modulus, ints, den)
        return obj

    @classmethod
    def rational(cls, value, modulus: int = 1) -> "Cyclotomic":
        v = as_fraction(value)
        deg = euler_phi(modulus)
        ints = [0] * deg
        ints[0] = v.numerator
        return cls._raw(modulus, ints, v.denominator)

    @classmethod
    def zero(cls, modulus: int = 1) -> "Cyclotomic":
        return cls.rational(0, modulus)

    @classmethod
    def one(cls, modulus: int = 1) -> "Cyclotomic":
        return cls.rational(1, modulus)

    # -- inspection

    @property
    def coefficients(self) -> tuple:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def __bool__(self):
        return not self.is_zero()

    def key(self) -> tuple:
        """Hashable exact representation, valid within one modulus."""
        return (self.modulus, self._num, self._den)

    # -- coercion

    def lift(self, modulus: int) -> "Cyclotomic":
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise IncompatibleModulus(
                f"cannot lift Q(zeta_{self.modulus}) into Q(zeta_{modulus})"
            )
        step = modulus // self.modulus
        spread = [0] * (step * (len(self._num) - 1) + 1) if self._num else [0]
        for j, c in enumerate(self._num):
            spread[j * step] = c
        return Cyclotomic._raw(modulus, _reduce_int(spread, modulus), self._den)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.modulus == self.modulus:
                return self, other
            M = self.modulus * other.modulus // math.gcd(self.modulus, other.modulus)
            return self.lift(M), other.lift(M)
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.rational(other, self.modulus)
        return None, None

    # -- arithmetic

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if a._den == b._den:
            ints = [x + y for x, y in zip(a._num, b._num)]
            return Cyclotomic._raw(a.modulus, ints, a._den)
        ints = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return Cyclotomic._raw(a.modulus, ints, a._den * b._den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.modulus, [-c for c in self._num], self._den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        M = a.modulus
        if b.is_rational():
            s = b._num[0]
            return Cyclotomic._raw(M, [c * s for c in a._num], a._den * b._den)
        if a.is_rational():
            s = a._num[0]
            return Cyclotomic._raw(M, [c * s for c in b._num], a._den * b._den)
        x, y = a._num, b._num
        prod = [0] * (len(x) + len(y) - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] += xi * yj
        return Cyclotomic._raw(M, _reduce_int(prod, M), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.rational_value(), self.modulus)
        inv = _inverse_mod(self.coefficients, self.modulus)
        return Cyclotomic(self.modulus, inv)

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.one(self.modulus)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a._num == b._num and a._den == b._den

    def __hash__(self):
        if self._hash is None:
            # equal elements may live in different moduli, so only the
            # rational part is a safe hash key
            if self.is_rational():
                self._hash = hash(self.rational_value())
            else:
                self._hash = hash("cyclotomic")
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self.modulus}, {[str(c) for c in self.coefficients]})"

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coefficients):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
                continue
            mono = f"z{self.modulus}" + (f"^{j}" if j > 1 else "")
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=4096)
def cyc_root_of_unity(a: int, M: int) -> Cyclotomic:
    """zeta_M ** (a mod M), reduced modulo Phi_M."""
    if M < 1:
        raise ValueError("modulus must be positive")
    a %= M
    ints = [0] * (a + 1)
    ints[a] = 1
    return Cyclotomic._raw(M, _reduce_int(ints, M), 1)


def root_of_unity(x, M: int) -> Cyclotomic:
    """exp(2 pi i x) for rational ``x`` whose denominator divides ``M``."""
    x = as_fraction(x)
    if M % x.denominator:
        raise IncompatibleModulus(f"denominator of {x} does not divide {M}")
    return cyc_root_of_unity(x.numerator * (M // x.denominator), M)


def cyc_arith(op: str, a: Cyclotomic, b: Cyclotomic | None = None):
    """Functional front end: ``op`` in add, sub, mul, neg, inv, eq."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


def cyc_lift(a: Cyclotomic, modulus: int) -> Cyclotomic:
    return a.lift(modulus)


@lru_cache(maxsize=None)
def _mp_roots(M: int):
    with mpmath.workdps(40):
        return tuple(mpmath.expjpi(mpmath.mpf(2 * j) / M) for j in range(euler_phi(M)))


def cyc_to_complex(a: Cyclotomic) -> complex:
    """Evaluate at zeta_M = exp(2 pi i / M), accumulated at 40 digits."""
    if a.is_rational():
        return complex(a.rational_value())
    roots = _mp_roots(a.modulus)
    with mpmath.workdps(40):
        acc = mpmath.mpc(0)
        for c, w in zip(a._num, roots):
            if c:
                acc += c * w
        acc /= a._den
        return complex(acc)
