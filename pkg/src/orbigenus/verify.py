"""Executable checks: rigidity, modular laws, vanishing, T_y limits, divisibility.

Every check returns a :class:`CheckReport`.  Exact checks run on the
evaluators in :mod:`orbigenus.genera`; the modular laws are checked in
floating point (mpmath, 30 digits) at random sample points, because the
SL2 action mixes q-orders and has no finite exact model.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import MissingBundleData, NonAbelianIsotropy, NonIntegralAge, TruncationInsufficient
from .genera import (
    GenusSeries,
    SigmaSpec,
    _Ctx,
    age_f,
    modified_orbifold_genus,
    orbifold_elliptic_genus,
    ty_family,
    ty_sector_terms,
)
from .model import OrbifoldModel
from .series import BiLaurent, RationalFunction, qseries_is_t_constant

__all__ = [
    "CheckReport",
    "MATRICES",
    "check_rigidity",
    "check_modular_numeric",
    "predict_and_check_vanishing",
    "ty_limit_decomposition",
    "check_divisibility",
    "cross_check_q0",
]

MATRICES = {
    "I": ((1, 0), (0, 1)),
    "T": ((1, 1), (0, 1)),
    "S": ((0, -1), (1, 0)),
    "TS": ((1, -1), (1, 0)),
}


@dataclass
class CheckReport:
    check_name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"checkName": self.check_name, "passed": self.passed, "details": self.details}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    def summary(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.check_name}"


def _str(x) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# rigidity


def check_rigidity(g: GenusSeries) -> CheckReport:
    rep = qseries_is_t_constant(g.series)
    orders = [{"q": _str(o.q), "constant": o.is_constant} for o in rep.per_order]
    details = {
        "genus": g.kind,
        "model": g.model,
        "sigma": str(g.sigma),
        "K": _str(g.K),
        "orders": orders,
        "identicallyZero": g.series.is_zero(),
    }
    bad = rep.first_failure()
    if bad is not None:
        details["firstFailure"] = {"q": _str(bad.q), "residual": str(bad.residual)}
    return CheckReport("rigidity", rep.all_constant, details)


# ---------------------------------------------------------------------------
# numeric modular laws


def _Phi(z, tau, K):
    """Truncated product for Phi(z, tau) and a bound on the dropped tail."""
    t = mpmath.expjpi(2 * z)
    q = mpmath.expjpi(2 * tau)
    val = mpmath.expjpi(z) - mpmath.expjpi(-z)
    qk = mpmath.mpc(1)
    for _ in range(K):
        qk *= q
        val *= (1 - t * qk) * (1 - qk / t) / (1 - qk) ** 2
    aq = abs(q)
    s = abs(t) + 1 / abs(t) + 2
    tail = s * aq ** (K + 1) / (1 - aq) if aq < 1 else mpmath.inf
    return val, tail * abs(val)


def _phi(w, tau, sigma, K):
    """Truncated product for phi(w, tau, sigma) and a tail bound."""
    x = mpmath.expjpi(2 * w)
    q = mpmath.expjpi(2 * tau)
    zeta = mpmath.expjpi(2 * sigma)
    val = mpmath.expjpi(-sigma) * (1 - zeta * x) / (1 - x)
    qk = mpmath.mpc(1)
    for _ in range(K):
        qk *= q
        val *= (1 - zeta * x * qk) * (1 - qk / (zeta * x)) / ((1 - x * qk) * (1 - qk / x))
    aq = abs(q)
    big = max(abs(x), 1 / abs(x), abs(zeta * x), 1 / abs(zeta * x))
    # dropped factors are 1 + O(big * q^k) for k > K
    lead = big * aq ** (K + 1)
    if lead >= 0.5 or aq >= 1:
        return val, mpmath.inf
    tail = 8 * lead / (1 - aq)
    return val, tail * abs(val)


def check_modular_numeric(
    which: str,
    A=None,
    samples: int = 20,
    K: int = 60,
    tol: float = 1e-8,
    seed: int = 0,
) -> CheckReport:
    """Check a transformation law of Phi or phi at random points.

    ``which`` is ``capitalPhi`` (SL2 law of Phi), ``phiLattice`` (the
    lattice law of phi; A is ignored) or ``phiSL2`` (SL2 law of phi).
    Samples have Re tau in [-1/2, 1/2], Im tau in [1, 2], z in (0, 1) and,
    for phi, sigma in (0, 1).
    """
    if which not in ("capitalPhi", "phiLattice", "phiSL2"):
        raise ValueError(f"unknown law {which!r}")
    if A is None:
        A = MATRICES["I"]
    if isinstance(A, str):
        A = MATRICES[A]
    (a, b), (c, d) = A
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    rng = random.Random(seed)
    max_err = 0.0
    max_tail = 0.0
    worst = None
    with mpmath.workdps(30):
        for s in range(samples):
            tau = mpmath.mpc(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 2.0))
            z = mpmath.mpf(rng.uniform(0.05, 0.95))
            if which == "phiLattice":
                sigma = mpmath.mpf(rng.uniform(0.05, 0.95))
                m, n = rng.randint(-2, 2), rng.randint(-2, 2)
                lhs, t1 = _phi(z + m * tau + n, tau, sigma, K)
                base, t2 = _phi(z, tau, sigma, K)
                rhs = mpmath.expjpi(-2 * m * sigma) * base
                t2 *= abs(mpmath.expjpi(-2 * m * sigma))
            else:
                j = c * tau + d
                z2, tau2 = z / j, (a * tau + b) / j
                if which == "capitalPhi":
                    lhs, t1 = _Phi(z2, tau2, K)
                    base, t2 = _Phi(z, tau, K)
                    pref = mpmath.expjpi(c * z * z / j) / j
                else:
                    sigma = mpmath.mpf(rng.uniform(0.05, 0.95))
                    lhs, t1 = _phi(z2, tau2, sigma, K)
                    base, t2 = _phi(z, tau, j * sigma, K)
                    pref = mpmath.expjpi(c * (2 * z * sigma + j * sigma**2))
                rhs = pref * base
                t2 *= abs(pref)
            err = float(abs(lhs - rhs))
            tail = float(t1 + t2)
            max_tail = max(max_tail, tail)
            if err > max_err:
                max_err = err
                worst = s
    if max_tail > tol / 10:
        raise TruncationInsufficient(
            f"estimated truncation error {max_tail:.3g} exceeds tol/10 = {tol / 10:.3g} at K = {K}"
        )
    details = {
        "law": which,
        "matrix": [[a, b], [c, d]],
        "samples": samples,
        "K": K,
        "tol": tol,
        "seed": seed,
        "maxError": max_err,
        "tailBound": max_tail,
        "worstSample": worst,
    }
    return CheckReport(f"modular:{which}", max_err <= tol, details)


# ---------------------------------------------------------------------------
# vanishing


def _plain_l(m: OrbifoldModel):
    """l = sum of t-weights when the determinant of TX is trivial, else None."""
    ls = set()
    for p in m.fixed_points:
        for g in p.isotropy.elements():
            if sum(w.chi[g] for w in p.weights).denominator != 1:
                return None
        ls.add(sum(w.m_s1 for w in p.weights))
    if len(ls) != 1:
        return None
    l = ls.pop()
    return int(l) if l.denominator == 1 else None


def predict_and_check_vanishing(m: OrbifoldModel, level, K=2) -> CheckReport:
    """Predict vanishing from the level-N hypotheses, then compute.

    ``level`` is ``("modified", N, k)``, ``("orbifold", N, k)`` or
    ``("plain", N, k)``.  A report only ever asserts vanishing; when the
    hypotheses do not give a prediction the observed value is reported and
    the check passes.
    """
    kind, N, k = level
    details = {"model": m.name, "level": kind, "N": N, "k": k, "K": str(K)}
    hyp = []
    if kind in ("modified", "orbifold"):
        if m.bundle is None:
            raise MissingBundleData("vanishing checks need line-bundle data")
        l = m.bundle.l
        details["l"] = l
        if m.bundle.N != N:
            hyp.append(f"bundle level {m.bundle.N} differs from N = {N}")
        if kind == "modified" and any(math.gcd(p.order, N) != 1 for p in m.fixed_points):
            hyp.append("N is not coprime to the isotropy orders")
        if kind == "orbifold" and not m.bundle.genuine:
            hyp.append("line bundle is not genuine")
        predicted = not hyp and math.gcd(l, N) == 1
    elif kind == "plain":
        l = _plain_l(m)
        details["l"] = l
        if l is None:
            hyp.append("determinant of the tangent bundle is not trivial")
        elif l != 0 and math.gcd(l, N) != 1:
            hyp.append(f"N = {N} is not coprime to l = {l}")
        predicted = not hyp and l != 0
    else:
        raise ValueError(f"unknown level kind {kind!r}")
    if kind == "modified":
        g = modified_orbifold_genus(m, k, N, K)
    else:
        g = orbifold_elliptic_genus(m, SigmaSpec.rational(k, N), K)
    observed = g.series.is_zero()
    details.update(
        {
            "hypothesisFailures": hyp,
            "predictedVanishing": predicted,
            "observedVanishing": observed,
            "claim": "vanishes" if predicted else "none",
        }
    )
    if not observed:
        details["firstNonzero"] = {"q": str(g.series.items()[0][0]), "value": str(g.series.items()[0][1])}
    return CheckReport("vanishing", (not predicted) or observed, details)


# ---------------------------------------------------------------------------
# T_y limits


def _limit(num: BiLaurent, den: BiLaurent, at_zero: bool):
    """lim t->0 (or t->infinity) of num/den as a zeta-polynomial, or None."""

    def extreme(p):
        exps = {Fraction(i, p.t_denom) for i, _ in p.terms}
        e = min(exps) if at_zero else max(exps)
        part = BiLaurent(
            {(0, j): c for (i, j), c in p.terms.items() if Fraction(i, p.t_denom) == e},
            1,
            p.z_denom,
        )
        return e, part

    if num.is_zero():
        return RationalFunction(0)
    en, pn = extreme(num)
    ed, pd = extreme(den)
    if en == ed:
        return RationalFunction(pn, pd)
    if (en > ed) == at_zero:
        return RationalFunction(0)
    return None


def ty_limit_decomposition(m: OrbifoldModel) -> CheckReport:
    """Compare T_y with its t -> 0 and t -> infinity sector limits.

    The t -> 0 sum must also equal sum_k (-y)^k (weight of sectors with
    mu = k), mu counting positive t-weights.
    """
    for p in m.fixed_points:
        if not p.isotropy.is_abelian:
            raise NonAbelianIsotropy(f"isotropy at {p.label} is not abelian")
    ty = ty_family(m, "ty").coefficient(0)
    lim0 = RationalFunction(0)
    liminf = RationalFunction(0)
    finite = True
    counted = BiLaurent()
    counted_inf = BiLaurent()
    mus = []
    pmap = {p.label: p for p in m.fixed_points}
    for label, h1, h2, pre, num, den in ty_sector_terms(m, "ty"):
        a0 = _limit(pre * num, den, True)
        ai = _limit(pre * num, den, False)
        if a0 is None or ai is None:
            finite = False
            continue
        lim0 = lim0 + a0
        liminf = liminf + ai
        p = pmap[label]
        mu = sum(1 for w in p.weights if w.m_s1 > 0)
        mus.append((label, h2, mu))
        counted = counted + pre * BiLaurent.monomial(0, mu)
        counted_inf = counted_inf + pre * BiLaurent.monomial(0, m.n - mu)
    counted_rf = RationalFunction(counted)
    ok0 = finite and lim0 == ty
    okinf = finite and liminf == ty
    okmu = finite and lim0 == counted_rf and liminf == RationalFunction(counted_inf)
    details = {
        "model": m.name,
        "ty": str(ty),
        "limitAtZero": str(lim0) if finite else None,
        "limitAtInfinity": str(liminf) if finite else None,
        "muDecomposition": str(counted_rf),
        "finite": finite,
        "zeroMatchesTy": ok0,
        "infinityMatchesTy": okinf,
        "decompositionMatches": okmu,
        "mu": [{"point": lbl, "element": h, "mu": mu} for lbl, h, mu in mus],
    }
    return CheckReport("tylimits", finite and ok0 and okinf and okmu, details)


# ---------------------------------------------------------------------------
# divisibility


def _zeta_poly(rf: RationalFunction):
    """Coefficient list of a t-free polynomial in integer powers of zeta."""
    if not rf.is_t_constant() or not rf.den.is_one():
        return None
    coeffs = {}
    for a, b, c in rf.num.items():
        if b.denominator != 1 or b < 0 or not c.is_rational():
            return None
        coeffs[int(b)] = c.rational_value()
    if not coeffs:
        return []
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, v in coeffs.items():
        out[e] = v
    return out


def check_divisibility(m: OrbifoldModel, N: int) -> CheckReport:
    """hat T_y as a polynomial in -y, divided by 1 + (-y) + ... + (-y)^(N-1)."""
    from . import _poly

    if m.bundle is None:
        raise MissingBundleData("divisibility needs line-bundle data")
    for p in m.fixed_points:
        for g in p.isotropy.elements():
            if age_f(p, g).denominator != 1:
                raise NonIntegralAge(f"age at {p.label}, element {g} is not an integer")
    hat = ty_family(m, "hatTy").coefficient(0)
    poly = _zeta_poly(hat)
    details = {
        "model": m.name,
        "N": N,
        "genuine": m.bundle.genuine,
        "l": m.bundle.l,
        "hatTy": str(hat),
    }
    if poly is None:
        details["error"] = "hatTy is not a polynomial in -y with rational coefficients"
        return CheckReport("divisibility", False, details)
    if not poly:
        details.update({"vacuous": True, "quotient": [], "remainder": []})
        return CheckReport("divisibility", True, details)
    divisor = [Fraction(1)] * N
    q, r = _poly.divmod_poly(poly, divisor)
    details.update(
        {
            "vacuous": False,
            "coefficients": [str(c) for c in poly],
            "quotient": [str(c) for c in q],
            "remainder": [str(c) for c in r],
            "degreeBound": N <= m.n + 1,
        }
    )
    return CheckReport("divisibility", not r, details)


# ---------------------------------------------------------------------------
# q^0 cross-check


def cross_check_q0(m: OrbifoldModel, k: int, N: int) -> CheckReport:
    """q^0 of zeta^(n/2) * genus against the T_y family at -y = zeta."""
    sigma = SigmaSpec.rational(k, N)
    ctx = _Ctx(sigma, m.r)
    half = ctx.zeta_power(Fraction(m.n, 2))
    items = []
    g = orbifold_elliptic_genus(m, sigma, 0)
    lhs = g.coefficient(0) * RationalFunction(half)
    rhs = ty_family(m, "hatTy").coefficient(0).specialize_zeta(sigma.value)
    items.append({"pair": "orbifold/hatTy", "equal": lhs == rhs, "lhs": str(lhs), "rhs": str(rhs)})
    if all(math.gcd(p.order, N) == 1 for p in m.fixed_points) and N > 1:
        g = modified_orbifold_genus(m, k, N, 0)
        lhs = g.coefficient(0) * RationalFunction(half)
        rhs = ty_family(m, "breveTy", N=N).coefficient(0).specialize_zeta(sigma.value)
        items.append({"pair": "modified/breveTy", "equal": lhs == rhs, "lhs": str(lhs), "rhs": str(rhs)})
    details = {"model": m.name, "sigma": str(sigma), "items": items}
    return CheckReport("q0", all(i["equal"] for i in items), details)
