"""Elliptic genera and the T_y family by localization at isolated fixed points.

Every genus here is a sum over fixed points x and over pairs (h1, h2) of
elements of the isotropy group H_x of products of the extended function

    phi(w) = zeta^(-1/2) (1 - zeta e(w)) / (1 - e(w))
             * prod_{k>=1} (1 - zeta e(w) q^k)(1 - zeta^-1 e(-w) q^k)
                           / ((1 - e(w) q^k)(1 - e(-w) q^k)),

e(w) = exp(2 pi i w), evaluated at w = tExp*z + qShift*tau - rootArg.  With
t = e(z) and q = e(tau), e(w) = t^tExp * e(-rootArg) * q^qShift.

q-coefficients are Laurent polynomials except for the factors with q-exponent
zero, which put (1 - monomial) into a q^0 denominator.  Contributions are
grouped by that denominator and combined over a common multiple only once
per genus, then reduced per q-order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NonAbelianIsotropy,
    NonCoprimeDenominator,
    NonCoprimeLevel,
    NonUnitLeadingTerm,
    PoleAtFactor,
)
from .exactnum import Cyclotomic, as_fraction, root_of_unity
from .model import FixedPointDatum, OrbifoldModel
from .series import BiLaurent, QSeries, RationalFunction, qseries_invert_unit

__all__ = [
    "SigmaSpec",
    "GenusSeries",
    "capital_phi",
    "phi_factor",
    "age_f",
    "breve_lift",
    "equivariant_elliptic_genus",
    "orbifold_elliptic_genus",
    "modified_orbifold_genus",
    "point_contributions",
    "ty_family",
    "stabilize",
    "unstabilize",
]


def _lcm(a, b):
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# sigma


@dataclass(frozen=True)
class SigmaSpec:
    """zeta = exp(2 pi i sigma), either formal or with sigma = k/N."""

    mode: str = "formal"
    k: int = 0
    N: int = 1

    def __post_init__(self):
        if self.mode not in ("formal", "rational"):
            raise ValueError(f"unknown sigma mode {self.mode!r}")
        if self.mode == "rational" and self.N < 1:
            raise ValueError("sigma denominator must be positive")

    @classmethod
    def formal(cls) -> "SigmaSpec":
        return cls("formal")

    @classmethod
    def rational(cls, k: int, N: int) -> "SigmaSpec":
        return cls("rational", int(k), int(N))

    @classmethod
    def parse(cls, text: str) -> "SigmaSpec":
        text = str(text).strip()
        if text == "formal":
            return cls.formal()
        if "/" not in text:
            raise ValueError(f"sigma must be 'k/N' or 'formal', got {text!r}")
        k, N = text.split("/", 1)
        return cls.rational(int(k), int(N))

    @property
    def is_formal(self) -> bool:
        return self.mode == "formal"

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, self.N)

    @property
    def in_level_range(self) -> bool:
        return self.mode == "rational" and 0 < self.k < self.N

    def __str__(self):
        return "formal" if self.is_formal else f"{self.k}/{self.N}"


class _Ctx:
    """Per-computation constants: the coefficient modulus and zeta powers."""

    def __init__(self, sigma: SigmaSpec, r: int = 1):
        self.sigma = sigma
        if sigma.is_formal:
            self.M = r
            self.zeta = BiLaurent.monomial(0, 1)
        else:
            self.M = 2 * sigma.N * r
            self.zeta = BiLaurent.constant(root_of_unity(sigma.value, self.M))
        self.zeta_inv = self.zeta.monomial_inverse()
        self.zeta_half_inv = self.zeta_power(Fraction(-1, 2))

    def zeta_power(self, e) -> BiLaurent:
        e = as_fraction(e)
        if self.sigma.is_formal:
            return BiLaurent.monomial(0, e)
        return BiLaurent.constant(root_of_unity(self.sigma.value * e, self._mod_for(self.sigma.value * e)))

    def _mod_for(self, x: Fraction) -> int:
        m = self.M
        while m % x.denominator:
            m *= x.denominator // math.gcd(m, x.denominator)
        return m

    def root(self, x) -> Cyclotomic:
        """exp(2 pi i x) in the working modulus (enlarged if needed)."""
        x = as_fraction(x)
        return root_of_unity(x, self._mod_for(x))


# ---------------------------------------------------------------------------
# series accumulation with Laurent-polynomial coefficients


class _Accum:
    """Running product of factor pairs (1 - a q^s) / (1 - b q^s).

    ``series`` holds Laurent-polynomial q-coefficients, ``scalar`` the q^0
    numerator collected from s = 0 factors and rewrites, ``den`` the list of
    q^0 denominator factors (1 - b) with b = c t^e, e > 0, keyed exactly.
    """

    def __init__(self, top: int):
        self.top = top
        self.series = {0: BiLaurent.one()}
        self.scalar = BiLaurent.one()
        self.den = []
        self.den_values = {}

    def mul_scalar(self, x: BiLaurent):
        self.scalar = self.scalar * x

    def apply_pair(self, a: BiLaurent, b: BiLaurent, S: int):
        if S < 0:
            self.scalar = self.scalar * (a * b.monomial_inverse())
            a, b, S = a.monomial_inverse(), b.monomial_inverse(), -S
        if S == 0:
            self._q0_pair(a, b)
            return
        if S > self.top:
            return
        top = self.top
        ser = self.series
        out = dict(ser)
        for e, v in ser.items():
            k = e + S
            if k <= top:
                w = -(v * a)
                out[k] = out[k] + w if k in out else w
        # divide by (1 - b q^S): R_e = out_e + b R_{e-S}
        res = {}
        for e in range(0, top + 1):
            v = out.get(e)
            prev = res.get(e - S)
            if prev is not None:
                w = prev * b
                v = w if v is None else v + w
            if v is not None and v:
                res[e] = v
        self.series = res

    def _q0_pair(self, a: BiLaurent, b: BiLaurent):
        one = BiLaurent.one()
        if b.is_t_free():
            c = b.constant_term() if b.is_z_free() else None
            if c is None:
                raise PoleAtFactor("zeta-dependent q^0 denominator")
            if c == 1:
                raise PoleAtFactor("phi factor has a pole: e(w) = 1 at q^0")
            self.scalar = self.scalar * (one - a) * (1 - c).inverse()
            return
        self.scalar = self.scalar * (one - a)
        ((i, j), c), = b.terms.items()
        if i < 0:
            # 1 / (1 - b) = -b^-1 / (1 - b^-1)
            b = b.monomial_inverse()
            self.scalar = self.scalar * (-b)
            ((i, j), c), = b.terms.items()
        key = (Fraction(i, b.t_denom), c.key())
        self.den.append(key)
        self.den_values[key] = b

    def den_key(self):
        return tuple(sorted(self.den, key=repr))


def _phi_into(acc: _Accum, ctx: _Ctx, t_exp, q_shift, root_arg, R: int):
    """Multiply acc by phi(t_exp z + q_shift tau - root_arg) (q in units 1/R)."""
    t_exp, q_shift = as_fraction(t_exp), as_fraction(q_shift)
    F = q_shift * R
    if F.denominator != 1:
        raise ValueError(f"q shift {q_shift} is not a multiple of 1/{R}")
    F = int(F)
    u0 = BiLaurent.monomial(t_exp, 0, ctx.root(-as_fraction(root_arg)))
    u0_inv = u0.monomial_inverse()
    zu0 = ctx.zeta * u0
    zu0_inv = ctx.zeta_inv * u0_inv
    top = acc.top
    # family A: s = f + k, k >= 0
    k = 0
    while F + k * R <= top:
        acc.apply_pair(zu0, u0, F + k * R)
        k += 1
    # family B: s = k - f, k >= 1
    k = 1
    while k * R - F <= top:
        acc.apply_pair(zu0_inv, u0_inv, k * R - F)
        k += 1
    acc.mul_scalar(ctx.zeta_half_inv)


def _top(K, R) -> int:
    return math.floor(as_fraction(K) * R)


def _finish(groups, values, R: int, K) -> QSeries:
    """Combine {den_key: {q_index: numerator}} over a common denominator."""
    if not groups:
        return QSeries({}, R, K)
    mult = {}
    for key in groups:
        counts = {}
        for f in key:
            counts[f] = counts.get(f, 0) + 1
        for f, n in counts.items():
            mult[f] = max(mult.get(f, 0), n)
    one = BiLaurent.one()
    factor_poly = {f: one - values[f] for f in mult}
    D = one
    for f, n in mult.items():
        D = D * factor_poly[f] ** n
    total = {}
    for key, ser in groups.items():
        counts = {}
        for f in key:
            counts[f] = counts.get(f, 0) + 1
        C = one
        for f, n in mult.items():
            extra = n - counts.get(f, 0)
            if extra:
                C = C * factor_poly[f] ** extra
        for e, v in ser.items():
            w = v * C if not C.is_one() else v
            total[e] = total[e] + w if e in total else w
    terms = {e: RationalFunction(v, D) for e, v in total.items() if v}
    return QSeries(terms, R, K)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ORBIGENUS_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    n = _threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# building blocks


def capital_phi(K, t=None, q_denom: int = 1) -> QSeries:
    """(t^1/2 - t^-1/2) prod_{k>=1} (1 - t q^k)(1 - t^-1 q^k) / (1 - q^k)^2.

    ``t`` may be any BiLaurent monomial (default: the variable t itself);
    stabilization substitutes zeta for it.
    """
    if t is None:
        t = BiLaurent.monomial(1)
    K = as_fraction(K)
    if K < 0:
        raise ValueError("truncation order must be non-negative")
    R = q_denom
    acc = _Accum(_top(K, R))
    one = BiLaurent.one()
    t_inv = t.monomial_inverse()
    k = 1
    while k * R <= acc.top:
        acc.apply_pair(t, one, k * R)
        acc.apply_pair(t_inv, one, k * R)
        k += 1
    (i, j), c = next(iter(t.terms.items()))
    half = BiLaurent({(i, j): c}, 2 * t.t_denom, 2 * t.z_denom)  # sqrt of a unit-coefficient monomial
    if c != 1:
        raise ValueError("capital_phi needs a monomial with coefficient 1")
    lead = half - half.monomial_inverse()
    return QSeries({e: RationalFunction(v * lead, reduced=True) for e, v in acc.series.items()}, R, K)


def phi_factor(t_exp, q_shift, root_arg, sigma: SigmaSpec, K) -> QSeries:
    """phi(t_exp z + q_shift tau - root_arg) as a truncated q-series."""
    t_exp, q_shift, root_arg = as_fraction(t_exp), as_fraction(q_shift), as_fraction(root_arg)
    R = q_shift.denominator
    ctx = _Ctx(sigma, root_arg.denominator)
    acc = _Accum(_top(K, R))
    _phi_into(acc, ctx, t_exp, q_shift, root_arg, R)
    groups = {acc.den_key(): {e: acc.scalar * v for e, v in acc.series.items()}}
    return _finish(groups, acc.den_values, R, K)


def age_f(point: FixedPointDatum, h: int) -> Fraction:
    """Sum over tangent lines of the [0, 1) weight of h."""
    return sum((w.chi[h] for w in point.weights), Fraction(0))


def breve_lift(f, N: int) -> int:
    """d*s mod N for f = s/r in lowest terms and d r = 1 mod N."""
    f = as_fraction(f)
    if N < 2:
        raise ValueError("level must be > 1")
    s, r = f.numerator, f.denominator
    if math.gcd(r, N) != 1:
        raise NonCoprimeDenominator(f"denominator {r} of {f} is not coprime to {N}")
    return pow(r, -1, N) * s % N


# ---------------------------------------------------------------------------
# genera


@dataclass
class GenusSeries:
    kind: str
    sigma: SigmaSpec
    series: QSeries
    model: str
    K: Fraction

    def coefficient(self, q=0) -> RationalFunction:
        return self.series.coefficient(q)

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "model": self.model,
            "sigma": str(self.sigma),
            "K": str(self.K),
            "terms": self.series.to_json(),
        }

    def to_text(self) -> str:
        lines = [f"{self.kind} genus of {self.model}, sigma = {self.sigma}, K = {self.K}"]
        if self.series.is_zero():
            lines.append("  0")
        for q, c in self.series.items():
            lines.append(f"  q^{q}: {c}")
        return "\n".join(lines)


def _require_abelian(m: OrbifoldModel):
    for p in m.fixed_points:
        if not p.isotropy.is_abelian:
            raise NonAbelianIsotropy(f"isotropy at {p.label} is not abelian")


def _point_groups(point, ctx, pairs, R, top, prefactor):
    """Grouped contributions of one fixed point over the given (h1, h2)."""
    groups = {}
    values = {}
    w = Fraction(1, point.order)
    for h1, h2 in pairs:
        acc = _Accum(top)
        pre = prefactor(point, h1)
        for tw in point.weights:
            _phi_into(acc, ctx, -tw.m_s1, tw.chi[h1], tw.chi[h2], R)
        scal = acc.scalar * pre
        scal = scal.scale(w)
        key = acc.den_key()
        values.update(acc.den_values)
        g = groups.setdefault(key, {})
        for e, v in acc.series.items():
            x = scal * v
            g[e] = g[e] + x if e in g else x
    return groups, values


def _merge(parts):
    groups, values = {}, {}
    for g, v in parts:
        values.update(v)
        for key, ser in g.items():
            tgt = groups.setdefault(key, {})
            for e, x in ser.items():
                tgt[e] = tgt[e] + x if e in tgt else x
    return groups, values


def _genus(m, ctx, K, R, pair_fn, prefactor, per_point=False):
    _require_abelian(m)
    top = _top(K, R)

    def one(point):
        return _point_groups(point, ctx, pair_fn(point), R, top, prefactor)

    parts = _map(one, m.fixed_points)
    if per_point:
        return [(p.label, _finish(g, v, R, K)) for p, (g, v) in zip(m.fixed_points, parts)]
    groups, values = _merge(parts)
    return _finish(groups, values, R, K)


def _no_prefactor(point, h1):
    return BiLaurent.one()


def _equivariant_pairs(point):
    e = point.isotropy.identity
    return [(e, h) for h in point.isotropy.elements()]


def _all_pairs(point):
    G = point.isotropy
    return [(a, b) for a in G.elements() for b in G.elements()]


def _orbifold_prefactor(ctx):
    def pre(point, h1):
        return ctx.zeta_power(age_f(point, h1))

    return pre


def _modified_prefactor(ctx, N):
    def pre(point, h1):
        return ctx.zeta_power(sum(breve_lift(w.chi[h1], N) for w in point.weights))

    return pre


def _sigma_check(sigma):
    if not isinstance(sigma, SigmaSpec):
        sigma = SigmaSpec.parse(sigma)
    return sigma


def equivariant_elliptic_genus(m: OrbifoldModel, sigma, K) -> GenusSeries:
    sigma = _sigma_check(sigma)
    K = as_fraction(K)
    ctx = _Ctx(sigma, m.r)
    series = _genus(m, ctx, K, 1, _equivariant_pairs, _no_prefactor)
    return GenusSeries("elliptic", sigma, series, m.name, K)


def orbifold_elliptic_genus(m: OrbifoldModel, sigma, K) -> GenusSeries:
    sigma = _sigma_check(sigma)
    K = as_fraction(K)
    ctx = _Ctx(sigma, m.r)
    series = _genus(m, ctx, K, m.r, _all_pairs, _orbifold_prefactor(ctx))
    return GenusSeries("orbifoldElliptic", sigma, series, m.name, K)


def _check_level(m, k, N):
    if N < 2:
        raise NonCoprimeLevel("level must be > 1")
    for p in m.fixed_points:
        if math.gcd(p.order, N) != 1:
            raise NonCoprimeLevel(f"level {N} is not coprime to |H| = {p.order} at {p.label}")


def modified_orbifold_genus(m: OrbifoldModel, k: int, N: int, K) -> GenusSeries:
    _check_level(m, k, N)
    sigma = SigmaSpec.rational(k, N)
    K = as_fraction(K)
    ctx = _Ctx(sigma, m.r)
    series = _genus(m, ctx, K, m.r, _all_pairs, _modified_prefactor(ctx, N))
    return GenusSeries("modifiedOrbifold", sigma, series, m.name, K)


def point_contributions(m: OrbifoldModel, kind: str, sigma, K) -> list:
    """Per-fixed-point terms of a genus: [(label, QSeries)]."""
    sigma = _sigma_check(sigma)
    K = as_fraction(K)
    ctx = _Ctx(sigma, m.r)
    if kind == "elliptic":
        return _genus(m, ctx, K, 1, _equivariant_pairs, _no_prefactor, per_point=True)
    if kind == "orbifold":
        return _genus(m, ctx, K, m.r, _all_pairs, _orbifold_prefactor(ctx), per_point=True)
    if kind == "modified":
        _check_level(m, sigma.k, sigma.N)
        return _genus(
            m, ctx, K, m.r, _all_pairs, _modified_prefactor(ctx, sigma.N), per_point=True
        )
    raise ValueError(f"unknown genus kind {kind!r}")


# ---------------------------------------------------------------------------
# the T_y family


def _ty_sector(point, ctx, h1, h2):
    """prod over lines fixed by h1 of (1 - zeta u) / (1 - u), u = t^-m e(-chi(h2))."""
    num = BiLaurent.one()
    den = BiLaurent.one()
    for w in point.weights:
        if w.chi[h1] != 0:
            continue
        u = BiLaurent.monomial(-w.m_s1, 0, ctx.root(-w.chi[h2]))
        num = num * (BiLaurent.one() - ctx.zeta * u)
        den = den * (BiLaurent.one() - u)
    return num, den


def _sum_fractions(parts):
    """Sum of (num, den) pairs over the product of distinct denominators."""
    groups = {}
    for num, den in parts:
        key = den
        if key in groups:
            groups[key] = (groups[key][0] + num, den)
        else:
            groups[key] = (num, den)
    total = RationalFunction(0)
    for num, den in groups.values():
        if num:
            total = total + RationalFunction(num, den)
    return total


def ty_sector_terms(m: OrbifoldModel, which: str = "ty", N: int | None = None):
    """[(label, h1, h2, weight * prefactor, num, den)] in formal zeta = -y."""
    _require_abelian(m)
    if which == "breveTy":
        if N is None:
            raise ValueError("breveTy needs a level N")
        _check_level(m, 1, N)
    ctx = _Ctx(SigmaSpec.formal(), m.r)
    out = []
    for p in m.fixed_points:
        G = p.isotropy
        w = Fraction(1, p.order)
        h1s = [G.identity] if which in ("ty", "todd") else list(G.elements())
        for h1 in h1s:
            if which == "hatTy":
                pre = BiLaurent.monomial(0, age_f(p, h1), w)
            elif which == "breveTy":
                pre = BiLaurent.monomial(0, breve_lift(age_f(p, h1), N), w)
            else:
                pre = BiLaurent.constant(w)
            for h2 in G.elements():
                num, den = _ty_sector(p, ctx, h1, h2)
                out.append((p.label, h1, h2, pre, num, den))
    return out


def ty_family(m: OrbifoldModel, which: str = "ty", y=None, N: int | None = None) -> GenusSeries:
    """T_y, hat T_y, breve T_y or the Todd genus as a q^0-only series.

    Results are rational functions of t and of zeta = -y.  ``y`` may be
    None (formal) or a value to substitute; ``todd`` is T_y at y = 0.
    """
    if which not in ("ty", "hatTy", "breveTy", "todd"):
        raise ValueError(f"unknown T_y variant {which!r}")
    terms = ty_sector_terms(m, which, N)
    total = _sum_fractions((pre * num, den) for _, _, _, pre, num, den in terms)
    if which == "todd":
        total = total.zeta_at_zero()
    elif y is not None:
        total = total.substitute_zeta(-y)
    sigma = SigmaSpec.formal()
    return GenusSeries(which, sigma, QSeries({0: total}, 1, 0), m.name, Fraction(0))


# ---------------------------------------------------------------------------
# stabilization


def _phi_at_zeta(sigma: SigmaSpec, K, q_denom: int) -> QSeries:
    if sigma.is_formal:
        zeta = BiLaurent.monomial(0, 1)
        return capital_phi(K, zeta, q_denom)
    # zeta^(1/2) - zeta^(-1/2) with the half power taken as e(sigma / 2)
    M = 2 * sigma.N
    acc = _Accum(_top(K, q_denom))
    z = BiLaurent.constant(root_of_unity(sigma.value, M))
    one = BiLaurent.one()
    k = 1
    while k * q_denom <= acc.top:
        acc.apply_pair(z, one, k * q_denom)
        acc.apply_pair(z.monomial_inverse(), one, k * q_denom)
        k += 1
    lead = root_of_unity(sigma.value / 2, M) - root_of_unity(-sigma.value / 2, M)
    if not lead:
        raise NonUnitLeadingTerm("zeta^(1/2) - zeta^(-1/2) vanishes")
    return QSeries({e: RationalFunction(v * lead, reduced=True) for e, v in acc.series.items()}, q_denom, K)


def _stab_factor(g: GenusSeries, n: int, inverse: bool) -> QSeries:
    base = _phi_at_zeta(g.sigma, g.K, g.series.q_denom)
    if inverse:
        base = qseries_invert_unit(base)
    out = QSeries({0: RationalFunction.constant(1)}, g.series.q_denom, g.K)
    for _ in range(n):
        out = out * base
    return out


def stabilize(g: GenusSeries, n: int) -> GenusSeries:
    """Divide by Phi(sigma, tau)^n."""
    if n == 0:
        return GenusSeries(f"stabilized-{g.kind}", g.sigma, g.series, g.model, g.K)
    if not g.sigma.is_formal and g.sigma.value.denominator == 1:
        raise NonUnitLeadingTerm("zeta = 1: Phi(sigma, tau) has no invertible leading term")
    series = g.series * _stab_factor(g, n, inverse=True)
    return GenusSeries(f"stabilized-{g.kind}", g.sigma, series, g.model, g.K)


def unstabilize(g: GenusSeries, n: int) -> GenusSeries:
    """Multiply back by Phi(sigma, tau)^n."""
    kind = g.kind[len("stabilized-"):] if g.kind.startswith("stabilized-") else g.kind
    if n == 0:
        return GenusSeries(kind, g.sigma, g.series, g.model, g.K)
    series = g.series * _stab_factor(g, n, inverse=False)
    return GenusSeries(kind, g.sigma, series, g.model, g.K)
