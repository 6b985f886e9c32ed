"""Laurent polynomials in (t, zeta), rational functions of them, and q-series.

Exponents of t and of a formal zeta may be fractional.  A :class:`BiLaurent`
stores them as integers over per-object denominators ``t_denom`` and
``z_denom``; the public API speaks Fractions.

Rational functions are kept reduced.  Every denominator met in practice is a
product of a polynomial in t and a polynomial in zeta (the fixed point
formula only divides by zeta-free factors, stabilization only by zeta-only
ones), and reduction relies on that separability: the t-part is cancelled by
a gcd over Q(zeta_M) against every zeta-slice of the numerator, and likewise
for the zeta-part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import _poly
from .errors import (
    NonPositiveShift,
    NonUnitLeadingTerm,
    UnsupportedDenominator,
    ZeroDenominator,
)
from .exactnum import Cyclotomic, as_fraction, cyc_to_complex

__all__ = [
    "BiLaurent",
    "RationalFunction",
    "QSeries",
    "laurent_arith",
    "ratfun_reduce",
    "qseries_mul",
    "qseries_geometric",
    "qseries_invert_unit",
    "qseries_is_t_constant",
    "OrderConstancy",
    "ConstancyReport",
]


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _coerce_coeff(c, modulus=1):
    if isinstance(c, Cyclotomic):
        return c
    return Cyclotomic.rational(c, modulus)


# ---------------------------------------------------------------------------
# BiLaurent


class BiLaurent:
    """Finite sum of c * t^a * zeta^b with Cyclotomic c and rational a, b.

    ``terms`` maps integer pairs (i, j) to coefficients, meaning
    a = i / t_denom and b = j / z_denom.  Zero coefficients are never stored.
    """

    __slots__ = ("terms", "t_denom", "z_denom")

    def __init__(self, terms=None, t_denom: int = 1, z_denom: int = 1):
        self.t_denom = t_denom
        self.z_denom = z_denom
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_fractions(cls, mapping, modulus: int = 1) -> "BiLaurent":
        """Build from {(t_exp, zeta_exp): coeff} with rational exponents."""
        items = [(as_fraction(a), as_fraction(b), c) for (a, b), c in mapping.items()]
        td = zd = 1
        for a, b, _ in items:
            td = _lcm(td, a.denominator)
            zd = _lcm(zd, b.denominator)
        out = {}
        for a, b, c in items:
            key = (int(a * td), int(b * zd))
            c = _coerce_coeff(c, modulus)
            out[key] = out[key] + c if key in out else c
        return cls(out, td, zd)

    @classmethod
    def monomial(cls, t_exp=0, z_exp=0, coeff=1, modulus: int = 1) -> "BiLaurent":
        return cls.from_fractions({(t_exp, z_exp): coeff}, modulus)

    @classmethod
    def constant(cls, c, modulus: int = 1) -> "BiLaurent":
        return cls({(0, 0): _coerce_coeff(c, modulus)})

    @classmethod
    def one(cls) -> "BiLaurent":
        return cls.constant(1)

    # -- representation helpers

    def rescaled(self, t_denom: int, z_denom: int) -> dict:
        """Terms keyed over the larger denominators (which must be multiples)."""
        if t_denom == self.t_denom and z_denom == self.z_denom:
            return self.terms
        ft, fz = t_denom // self.t_denom, z_denom // self.z_denom
        return {(i * ft, j * fz): c for (i, j), c in self.terms.items()}

    def normalized(self) -> "BiLaurent":
        """Same element with the smallest possible denominators."""
        gt, gz = self.t_denom, self.z_denom
        for i, j in self.terms:
            gt = math.gcd(gt, i)
            gz = math.gcd(gz, j)
        if gt == 1 and gz == 1:
            return self
        return BiLaurent(
            {(i // gt, j // gz): c for (i, j), c in self.terms.items()},
            self.t_denom // gt,
            self.z_denom // gz,
        )

    def items(self):
        """Sorted (t_exp, zeta_exp, coeff) triples with Fraction exponents."""
        out = [
            (Fraction(i, self.t_denom), Fraction(j, self.z_denom), c)
            for (i, j), c in self.terms.items()
        ]
        out.sort(key=lambda x: (x[0], x[1]))
        return out

    @property
    def modulus(self) -> int:
        m = 1
        for c in self.terms.values():
            m = _lcm(m, c.modulus)
        return m

    # -- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        (k, c), = self.terms.items()
        return k == (0, 0) and c == 1

    def is_t_free(self) -> bool:
        return all(i == 0 for i, _ in self.terms)

    def is_z_free(self) -> bool:
        return all(j == 0 for _, j in self.terms)

    def constant_term(self) -> Cyclotomic:
        """Coefficient of t^0 zeta^0."""
        return self.terms.get((0, 0), Cyclotomic.zero())

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, BiLaurent):
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return BiLaurent.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        td, zd = _lcm(self.t_denom, other.t_denom), _lcm(self.z_denom, other.z_denom)
        out = dict(self.rescaled(td, zd))
        for k, c in other.rescaled(td, zd).items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return BiLaurent(out, td, zd)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent({k: -c for k, c in self.terms.items()}, self.t_denom, self.z_denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        td, zd = _lcm(self.t_denom, other.t_denom), _lcm(self.z_denom, other.z_denom)
        a, b = self.rescaled(td, zd), other.rescaled(td, zd)
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                k = (i1 + i2, j1 + j2)
                v = c1 * c2
                out[k] = out[k] + v if k in out else v
        return BiLaurent(out, td, zd)

    __rmul__ = __mul__

    def scale(self, c) -> "BiLaurent":
        if isinstance(c, (int, Fraction)) and c == 1:
            return self
        return BiLaurent({k: v * c for k, v in self.terms.items()}, self.t_denom, self.z_denom)

    def shift(self, t_exp=0, z_exp=0) -> "BiLaurent":
        """Multiply by the monomial t^t_exp zeta^z_exp."""
        return self * BiLaurent.monomial(t_exp, z_exp)

    def monomial_inverse(self) -> "BiLaurent":
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the Laurent ring")
        (i, j), c = next(iter(self.terms.items()))
        return BiLaurent({(-i, -j): c.inverse()}, self.t_denom, self.z_denom)

    def __pow__(self, e: int):
        if e < 0:
            return self.monomial_inverse() ** (-e)
        out = BiLaurent.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        td, zd = _lcm(self.t_denom, other.t_denom), _lcm(self.z_denom, other.z_denom)
        a, b = self.rescaled(td, zd), other.rescaled(td, zd)
        if a.keys() != b.keys():
            return False
        return all(a[k] == b[k] for k in a)

    def __hash__(self):
        n = self.normalized()
        return hash((frozenset(n.terms), n.t_denom, n.z_denom))

    # -- specialization and evaluation

    def specialize_zeta(self, sigma) -> "BiLaurent":
        """Replace formal zeta by exp(2 pi i sigma) for rational sigma."""
        from .exactnum import root_of_unity

        sigma = as_fraction(sigma)
        out = {}
        for (i, j), c in self.terms.items():
            e = sigma * Fraction(j, self.z_denom)
            v = c * root_of_unity(e, _lcm(e.denominator, c.modulus))
            k = (i, 0)
            out[k] = out[k] + v if k in out else v
        return BiLaurent(out, self.t_denom, 1)

    def substitute_zeta(self, value) -> "BiLaurent":
        """Replace formal zeta by a Cyclotomic (or rational) value.

        Needs integer zeta exponents, except that zeta = 0 is allowed whenever
        no exponent is negative.
        """
        if isinstance(value, (int, Fraction)) and value == 0:
            return self.zeta_at_zero()
        if not isinstance(value, Cyclotomic):
            value = Cyclotomic.rational(value)
        out = {}
        for (i, j), c in self.terms.items():
            if j % self.z_denom:
                raise ValueError("fractional zeta exponent cannot take an arbitrary value")
            v = c * value ** (j // self.z_denom)
            k = (i, 0)
            out[k] = out[k] + v if k in out else v
        return BiLaurent(out, self.t_denom, 1)

    def zeta_at_zero(self) -> "BiLaurent":
        """Set zeta = 0; requires no negative zeta exponents."""
        if any(j < 0 for _, j in self.terms):
            raise ValueError("negative zeta power cannot be evaluated at zeta = 0")
        return BiLaurent(
            {(i, 0): c for (i, j), c in self.terms.items() if j == 0}, self.t_denom, 1
        )

    def evaluate(self, z: complex, sigma: complex = 0.0) -> complex:
        """Value at t = exp(2 pi i z), zeta = exp(2 pi i sigma)."""
        acc = 0j
        for (i, j), c in self.terms.items():
            arg = z * i / self.t_denom + sigma * j / self.z_denom
            acc += cyc_to_complex(c) * cmath.exp(2j * cmath.pi * arg)
        return acc

    def to_json(self):
        """List of [t_exp, zeta_exp, modulus, coefficient vector] entries."""
        return [
            [str(a), str(b), c.modulus, [str(x) for x in c.coefficients]]
            for a, b, c in self.items()
        ]

    @classmethod
    def from_json(cls, data) -> "BiLaurent":
        mapping = {}
        for a, b, m, coeffs in data:
            mapping[(Fraction(a), Fraction(b))] = Cyclotomic(int(m), [Fraction(x) for x in coeffs])
        return cls.from_fractions(mapping)

    def __repr__(self):
        return f"BiLaurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, b, c in self.items():
            mono = []
            if a:
                mono.append("t" if a == 1 else f"t^({a})")
            if b:
                mono.append("zeta" if b == 1 else f"zeta^({b})")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(mono))
            elif cs == "-1":
                parts.append("-" + "*".join(mono))
            else:
                parts.append(f"({cs})*" + "*".join(mono))
        return " + ".join(parts).replace("+ -", "- ")


def laurent_arith(op: str, a: BiLaurent, b=None) -> BiLaurent:
    """Functional front end: ``op`` in add, mul, neg, scale."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# reduction


def _separate(den: BiLaurent):
    """Write den = piv * t^i0 zeta^j0 * P(T) * Q(W) with P(0) = Q(0) = 1.

    T = t^(1/t_denom), W = zeta^(1/z_denom).  Returns (piv, i0, j0, P, Q) as
    coefficient lists, or raises UnsupportedDenominator.
    """
    terms = den.terms
    i0 = min(i for i, _ in terms)
    j0 = min(j for i, j in terms if i == i0)
    piv = terms[(i0, j0)]
    col = {i: c for (i, j), c in terms.items() if j == j0}
    row = {j: c for (i, j), c in terms.items() if i == i0}
    if len(terms) != len(col) * len(row):
        raise UnsupportedDenominator("denominator does not split into t and zeta parts")
    if len(col) > 1 and len(row) > 1:
        for (i, j), c in terms.items():
            if i not in col or j not in row or c * piv != col[i] * row[j]:
                raise UnsupportedDenominator(
                    "denominator does not split into t and zeta parts"
                )
    inv = piv.inverse()
    P = [Cyclotomic.zero()] * (max(col) - i0 + 1)
    for i, c in col.items():
        P[i - i0] = c * inv
    Q = [Cyclotomic.zero()] * (max(row) - j0 + 1)
    for j, c in row.items():
        Q[j - j0] = c * inv
    return piv, i0, j0, P, Q


def _slices(terms, axis):
    """Group terms by the other exponent: {other: {exp_on_axis: coeff}}."""
    out = {}
    for (i, j), c in terms.items():
        if axis == 0:
            out.setdefault(j, {})[i] = c
        else:
            out.setdefault(i, {})[j] = c
    return out


def _as_list(slice_terms):
    lo = min(slice_terms)
    hi = max(slice_terms)
    lst = [Cyclotomic.zero()] * (hi - lo + 1)
    for e, c in slice_terms.items():
        lst[e - lo] = c
    return lo, lst


def _cancel(num_terms, P, axis):
    """Cancel the common factor of P with every slice of the numerator.

    Returns (new numerator terms, reduced P).  P(0) = 1 on entry and exit.
    """
    if len(P) <= 1 or not num_terms:
        return num_terms, P
    slices = {k: _as_list(s) for k, s in _slices(num_terms, axis).items()}

    def divide_all(D):
        out = {}
        for k, (lo, lst) in slices.items():
            q = _poly.exact_quotient(lst, D)
            if q is None:
                return None
            out[k] = (lo, q)
        return out

    quot = divide_all(P)
    if quot is not None:
        P_new = [Cyclotomic.one()]
    else:
        g = P
        for lo, lst in slices.values():
            g = _poly.gcd(g, lst)
            if len(g) == 1:
                return num_terms, P
        g0inv = g[0].inverse()
        g = [c * g0inv for c in g]
        quot = divide_all(g)
        P_new = _poly.exact_quotient(P, g)
        if quot is None or P_new is None:
            raise ArithmeticError("gcd failed to divide exactly")
    out = {}
    for k, (lo, q) in quot.items():
        for e, c in enumerate(q):
            if c:
                out[(lo + e, k) if axis == 0 else (k, lo + e)] = c
    return out, P_new


def _reduce_pair(num: BiLaurent, den: BiLaurent):
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    td, zd = _lcm(num.t_denom, den.t_denom), _lcm(num.z_denom, den.z_denom)
    den_terms = den.rescaled(td, zd)
    if not num.terms:
        return BiLaurent(), BiLaurent.one()
    dn = BiLaurent(den_terms, td, zd)
    piv, i0, j0, P, Q = _separate(dn)
    inv = piv.inverse()
    n_terms = {(i - i0, j - j0): c * inv for (i, j), c in num.rescaled(td, zd).items()}
    n_terms, P = _cancel(n_terms, P, 0)
    n_terms, Q = _cancel(n_terms, Q, 1)
    d_terms = {}
    for i, a in enumerate(P):
        if not a:
            continue
        for j, b in enumerate(Q):
            if b:
                d_terms[(i, j)] = a * b
    return (
        BiLaurent(n_terms, td, zd).normalized(),
        BiLaurent(d_terms, td, zd).normalized(),
    )


# ---------------------------------------------------------------------------
# RationalFunction


class RationalFunction:
    """Reduced quotient of two BiLaurent polynomials.

    The denominator is normalized so that its lowest term is 1 * t^0 zeta^0;
    any monomial factor is moved into the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None, *, reduced: bool = False):
        num = _to_laurent(num if num is not None else 0)
        den = _to_laurent(den if den is not None else 1)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if not reduced:
            if den.is_one():
                pass
            elif den.is_monomial():
                num = num * den.monomial_inverse()
                den = BiLaurent.one()
            else:
                num, den = _reduce_pair(num, den)
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(BiLaurent.constant(c), reduced=True)

    # -- predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_t_constant(self) -> bool:
        return self.num.is_t_free() and self.den.is_t_free()

    # -- arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (BiLaurent, int, Fraction, Cyclotomic)):
            return RationalFunction(_to_laurent(other), reduced=True)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num + other.num, reduced=True)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num * other.num, reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDenominator("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RationalFunction.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash(self.den.is_one())

    # -- specialization and evaluation

    def specialize_zeta(self, sigma) -> "RationalFunction":
        return RationalFunction(self.num.specialize_zeta(sigma), self.den.specialize_zeta(sigma))

    def substitute_zeta(self, value) -> "RationalFunction":
        return RationalFunction(self.num.substitute_zeta(value), self.den.substitute_zeta(value))

    def zeta_at_zero(self) -> "RationalFunction":
        return RationalFunction(self.num.zeta_at_zero(), self.den.zeta_at_zero())

    def evaluate(self, z: complex, sigma: complex = 0.0) -> complex:
        return self.num.evaluate(z, sigma) / self.den.evaluate(z, sigma)

    def constant_value(self) -> Cyclotomic:
        """The value of a t- and zeta-free function as a Cyclotomic."""
        if self.num.is_zero():
            return Cyclotomic.zero()
        if not (self.den.is_one() and self.num.is_t_free() and self.num.is_z_free()):
            raise ValueError(f"{self} is not a constant")
        return self.num.constant_term()

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        return cls(BiLaurent.from_json(data["num"]), BiLaurent.from_json(data["den"]))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _to_laurent(x) -> BiLaurent:
    if isinstance(x, BiLaurent):
        return x
    if isinstance(x, (int, Fraction, Cyclotomic)):
        return BiLaurent.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def ratfun_reduce(num: BiLaurent, den: BiLaurent) -> RationalFunction:
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# QSeries


class QSeries:
    """Truncated series sum_e c_e q^(e / q_denom) with RationalFunction c_e.

    Only exponents e / q_denom <= order are kept.
    """

    __slots__ = ("terms", "q_denom", "order")

    def __init__(self, terms=None, q_denom: int = 1, order=0):
        self.q_denom = q_denom
        self.order = as_fraction(order)
        top = self.max_index
        clean = {}
        for e, c in (terms or {}).items():
            if e > top:
                continue
            if not isinstance(c, RationalFunction):
                c = RationalFunction._coerce(c)
            if c:
                clean[e] = c
        self.terms = clean

    @property
    def max_index(self) -> int:
        return math.floor(self.order * self.q_denom)

    @classmethod
    def constant(cls, c, order=0) -> "QSeries":
        return cls({0: c}, 1, order)

    @classmethod
    def from_fractions(cls, mapping, order, q_denom: int | None = None) -> "QSeries":
        """Build from {q_exp: coefficient}."""
        exps = [as_fraction(e) for e in mapping]
        r = q_denom or 1
        for e in exps:
            r = _lcm(r, e.denominator)
        return cls({int(as_fraction(e) * r): c for e, c in mapping.items()}, r, order)

    def lifted(self, q_denom: int) -> "QSeries":
        if q_denom == self.q_denom:
            return self
        f = q_denom // self.q_denom
        if f * self.q_denom != q_denom:
            raise ValueError("q denominators must divide")
        return QSeries({e * f: c for e, c in self.terms.items()}, q_denom, self.order)

    def truncated(self, order) -> "QSeries":
        return QSeries(self.terms, self.q_denom, min(self.order, as_fraction(order)))

    def coefficient(self, q_exp) -> RationalFunction:
        e = as_fraction(q_exp) * self.q_denom
        if e.denominator != 1:
            return RationalFunction.constant(0)
        return self.terms.get(int(e), RationalFunction.constant(0))

    def items(self):
        return [(Fraction(e, self.q_denom), self.terms[e]) for e in sorted(self.terms)]

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic

    def _align(self, other):
        r = _lcm(self.q_denom, other.q_denom)
        return self.lifted(r), other.lifted(r), r, min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(RationalFunction._coerce(other), self.order)
        a, b, r, K = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out[e] + c if e in out else c
        return QSeries(out, r, K)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.terms.items()}, self.q_denom, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            c = RationalFunction._coerce(other)
            if c is None:
                return NotImplemented
            return QSeries({e: v * c for e, v in self.terms.items()}, self.q_denom, self.order)
        return qseries_mul(self, other)

    __rmul__ = __mul__

    def mul_one_minus(self, c, shift: int) -> "QSeries":
        """self * (1 - c q^(shift / q_denom))."""
        c = RationalFunction._coerce(c)
        out = dict(self.terms)
        top = self.max_index
        for e, v in self.terms.items():
            k = e + shift
            if k > top:
                continue
            w = -(v * c)
            out[k] = out[k] + w if k in out else w
        return QSeries(out, self.q_denom, self.order)

    def mul_geometric(self, c, shift: int) -> "QSeries":
        """self / (1 - c q^(shift / q_denom)) for shift > 0."""
        if shift <= 0:
            raise NonPositiveShift("geometric expansion needs a positive q shift")
        c = RationalFunction._coerce(c)
        if not self.terms:
            return self
        lo, top = min(self.terms), self.max_index
        out = {}
        for e in range(lo, top + 1):
            v = self.terms.get(e)
            prev = out.get(e - shift)
            if prev is not None:
                w = prev * c
                v = w if v is None else v + w
            if v is not None and v:
                out[e] = v
        return QSeries(out, self.q_denom, self.order)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b, _, _ = self._align(other)
        if a.order != b.order or a.terms.keys() != b.terms.keys():
            return False
        return all(a.terms[e] == b.terms[e] for e in a.terms)

    __hash__ = None

    def map_coefficients(self, fn) -> "QSeries":
        return QSeries({e: fn(c) for e, c in self.terms.items()}, self.q_denom, self.order)

    def evaluate(self, z: complex, tau: complex, sigma: complex = 0.0) -> complex:
        acc = 0j
        for e, c in self.terms.items():
            acc += c.evaluate(z, sigma) * cmath.exp(2j * cmath.pi * tau * e / self.q_denom)
        return acc

    def to_json(self):
        return [
            {"q": str(q), "value": c.to_json()} for q, c in self.items()
        ]

    def __repr__(self):
        body = " + ".join(f"[{c}]*q^({q})" for q, c in self.items()) or "0"
        return f"QSeries({body} + O(q^>{self.order}))"


def qseries_mul(a: QSeries, b: QSeries) -> QSeries:
    a, b, r, K = a._align(b)
    top = math.floor(K * r)
    out = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = e1 + e2
            if e > top:
                continue
            v = c1 * c2
            out[e] = out[e] + v if e in out else v
    return QSeries(out, r, K)


def qseries_geometric(c: BiLaurent, q_shift, K) -> QSeries:
    """1 / (1 - c q^q_shift) = sum_j c^j q^(j q_shift), truncated at K."""
    q_shift = as_fraction(q_shift)
    if q_shift <= 0:
        raise NonPositiveShift(f"q shift {q_shift} is not positive")
    c = _to_laurent(c)
    if not c.is_monomial():
        raise ValueError("geometric ratio must be a monomial")
    r = q_shift.denominator
    step = q_shift.numerator
    one = QSeries({0: RationalFunction.constant(1)}, r, K)
    return one.mul_geometric(c, step)


def qseries_invert_unit(a: QSeries) -> QSeries:
    if not a.terms or min(a.terms) < 0 or 0 not in a.terms:
        raise NonUnitLeadingTerm("q^0 coefficient is zero or the series has negative order")
    a0inv = a.terms[0].inverse()
    top = a.max_index
    out = {0: a0inv}
    tail = sorted(e for e in a.terms if e > 0)
    for n in range(1, top + 1):
        acc = None
        for k in tail:
            if k > n:
                break
            prev = out.get(n - k)
            if prev is None:
                continue
            v = a.terms[k] * prev
            acc = v if acc is None else acc + v
        if acc is not None and acc:
            out[n] = -(acc * a0inv)
    return QSeries(out, a.q_denom, a.order)


@dataclass(frozen=True)
class OrderConstancy:
    q: Fraction
    is_constant: bool
    residual: RationalFunction


@dataclass(frozen=True)
class ConstancyReport:
    per_order: tuple

    @property
    def all_constant(self) -> bool:
        return all(o.is_constant for o in self.per_order)

    def first_failure(self):
        for o in self.per_order:
            if not o.is_constant:
                return o
        return None


def qseries_is_t_constant(a: QSeries) -> ConstancyReport:
    return ConstancyReport(
        tuple(OrderConstancy(q, c.is_t_constant(), c) for q, c in a.items())
    )
