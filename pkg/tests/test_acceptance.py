"""The ten acceptance criteria, one test each, at their stated tolerances.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.  Running this file directly does the same.
"""

import itertools
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from orbigenus import fixture_path
from orbigenus.errors import NonCoprimeDenominator
from orbigenus.exactnum import root_of_unity
from orbigenus.genera import (
    SigmaSpec,
    breve_lift,
    equivariant_elliptic_genus,
    modified_orbifold_genus,
    orbifold_elliptic_genus,
    phi_factor,
    point_contributions,
    ty_family,
)
from orbigenus.groups import FiniteGroup, commuting_pairs, conjugacy_classes, double_classes
from orbigenus.series import BiLaurent, RationalFunction
from orbigenus.verify import (
    MATRICES,
    check_modular_numeric,
    check_rigidity,
    cross_check_q0,
    ty_limit_decomposition,
)

from oracles import bott_ty, brute_group_counts, compose

WPS = {"cp1": ((1, 1), (0, 1)), "cp2": ((1, 1, 1), (0, 1, 2)), "p113": ((1, 1, 3), (0, 1, 5))}


def _report(n, ok, msg):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {msg}")


@pytest.mark.criterion(1, "modular laws of Phi and phi (I, T, S, TS; 20 samples, K=60, tol 1e-8)")
def test_criterion_1_modularity():
    t0 = time.perf_counter()
    reports = []
    for law in ("capitalPhi", "phiSL2"):
        for A in MATRICES:
            reports.append(check_modular_numeric(law, A, samples=20, K=60, tol=1e-8, seed=1))
    reports.append(check_modular_numeric("phiLattice", None, samples=20, K=60, tol=1e-8, seed=1))
    elapsed = time.perf_counter() - t0
    worst = max(r.details["maxError"] for r in reports)
    ok = all(r.passed for r in reports) and elapsed <= 10
    _report(1, ok, f"max error {worst:.2e}, {elapsed:.2f}s")
    assert all(r.passed for r in reports), [r.summary() for r in reports if not r.passed]
    assert elapsed <= 10


@pytest.mark.criterion(2, "lattice shift law of phi holds exactly (50 random inputs, K=3)")
def test_criterion_2_lattice_exact():
    rng = random.Random(2)
    t0 = time.perf_counter()
    for _ in range(50):
        N = rng.randint(2, 9)
        k = rng.randint(1, N - 1)
        t_exp = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        f = Fraction(rng.randint(0, 11), 12)
        a = Fraction(rng.randint(0, 11), 12)
        if t_exp == 0 and a == 0:
            a = Fraction(1, 12)
        sigma = SigmaSpec.rational(k, N)
        shifted = phi_factor(t_exp, f + 1, a, sigma, 3)
        base = phi_factor(t_exp, f, a, sigma, 3)
        zinv = RationalFunction.constant(root_of_unity(-sigma.value, 2 * N))
        assert shifted == base.map_coefficients(lambda c: c * zinv), (t_exp, f, a, sigma)
    elapsed = time.perf_counter() - t0
    _report(2, elapsed <= 10, f"50 exact identities, {elapsed:.2f}s")
    assert elapsed <= 10


@pytest.mark.criterion(3, "CP1 level 2 and CP2 level 3 elliptic genera t-constant to K=5")
def test_criterion_3_manifold_rigidity(models):
    t0 = time.perf_counter()
    for name, sigma in (("cp1", "1/2"), ("cp2", "1/3")):
        g = equivariant_elliptic_genus(models[name], sigma, 5)
        rep = check_rigidity(g)
        assert rep.passed, rep.details
        assert g.series.max_index == 5
    elapsed = time.perf_counter() - t0
    _report(3, elapsed <= 120, f"{elapsed:.2f}s")
    assert elapsed <= 120


@pytest.mark.criterion(4, "P(1,1,3) modified genus, N=5, k=1..4, t-constant to K=2")
def test_criterion_4_orbifold_rigidity(models):
    t0 = time.perf_counter()
    for k in range(1, 5):
        g = modified_orbifold_genus(models["p113"], k, 5, 2)
        rep = check_rigidity(g)
        assert rep.passed, (k, rep.details)
    elapsed = time.perf_counter() - t0
    _report(4, elapsed <= 300, f"{elapsed:.2f}s")
    assert elapsed <= 300


@pytest.mark.criterion(5, "T_y values, Todd = 1, T_y limit decomposition on all fixtures")
def test_criterion_5_ty_family(models):
    zeta = BiLaurent.monomial(0, 1)
    one = BiLaurent.one()
    # frozen oracle values: 1 - y and 1 - y + y^2, i.e. 1 + zeta and 1 + zeta + zeta^2
    expected = {"cp1": one + zeta, "cp2": one + zeta + zeta * zeta}
    for name, val in expected.items():
        got = ty_family(models[name], "ty").coefficient(0)
        assert got == RationalFunction(val)
        for y in (Fraction(0), Fraction(3), Fraction(-2, 7)):
            num = ty_family(models[name], "ty", y=y).coefficient(0).constant_value()
            a, c = WPS[name]
            assert abs(bott_ty(a, c, float(y)) - float(num.rational_value())) < 1e-9
    for name in ("cp1", "cp2", "p113"):
        todd = ty_family(models[name], "todd").coefficient(0)
        assert todd == RationalFunction.constant(1)
        a, c = WPS[name]
        assert abs(bott_ty(a, c, 0.0) - 1) < 1e-9
    for name in ("cp1", "cp2", "p112", "p113"):
        rep = ty_limit_decomposition(models[name])
        assert rep.passed, rep.details
    _report(5, True, "T_y(CP1) = 1 - y, T_y(CP2) = 1 - y + y^2, Todd = 1")


@pytest.mark.criterion(6, "q^0 cross-check on four fixtures, two levels each")
def test_criterion_6_q0_consistency(models):
    levels = {"cp1": [(1, 2), (1, 3)], "cp2": [(1, 3), (2, 5)], "p112": [(1, 2), (1, 3)], "p113": [(1, 5), (2, 7)]}
    n = 0
    for name, ks in levels.items():
        for k, N in ks:
            rep = cross_check_q0(models[name], k, N)
            assert rep.passed, rep.details
            n += len(rep.details["items"])
    _report(6, True, f"{n} exact equalities")


@pytest.mark.criterion(7, "pole cancellation: per-point q^1 terms have t-poles, totals do not")
def test_criterion_7_pole_cancellation(models):
    rigid = [
        ("cp1", "elliptic", "1/2", equivariant_elliptic_genus),
        ("cp2", "elliptic", "1/3", equivariant_elliptic_genus),
        ("p112", "orbifold", "1/2", orbifold_elliptic_genus),
        ("p113", "modified", "1/5", lambda m, s, K: modified_orbifold_genus(m, 1, 5, K)),
    ]
    for name, kind, sigma, total_fn in rigid:
        m = models[name]
        parts = point_contributions(m, kind, sigma, 1)
        assert len(parts) == len(m.fixed_points)
        for label, ser in parts:
            assert not ser.coefficient(1).den.is_t_free(), (name, label)
        total = total_fn(m, sigma, 1)
        assert check_rigidity(total).passed
        assert total.coefficient(1).den.is_one()
        summed = sum((s.coefficient(1) for _, s in parts), RationalFunction(0))
        assert summed == total.coefficient(1)
    _report(7, True, "checked on CP1, CP2, P(1,1,2), P(1,1,3)")


def _symmetric_elements(n):
    return list(itertools.permutations(range(n)))


@pytest.mark.criterion(8, "group combinatorics match brute force (Z/n, Z2xZ2, S3, S4)")
def test_criterion_8_groups():
    cases = [(FiniteGroup.cyclic(n), list(range(n)), lambda a, b, n=n: (a + b) % n) for n in range(1, 13)]
    v4 = [(x, y) for x in range(2) for y in range(2)]
    cases.append((FiniteGroup.product([2, 2]), v4, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)))
    for n in (3, 4):
        cases.append((FiniteGroup.symmetric(n), _symmetric_elements(n), compose))
    for G, els, mul in cases:
        expect = brute_group_counts(els, mul)
        got = (len(conjugacy_classes(G)), len(commuting_pairs(G)), len(double_classes(G)))
        assert got == expect, (G, got, expect)
    S3 = FiniteGroup.symmetric(3)
    assert len(double_classes(S3)) == 8
    assert len(commuting_pairs(S3)) == 18
    _report(8, True, "|C^(S3)| = 8, |CM(S3)| = 18")


@pytest.mark.criterion(9, "breve lift: additive mod N, breve(2/3, 5) = 4, error when not coprime")
def test_criterion_9_breve():
    rng = random.Random(9)
    done = 0
    while done < 1000:
        N = rng.randint(2, 40)
        r = rng.randint(1, 40)
        if math.gcd(r, N) != 1:
            continue
        f1 = Fraction(rng.randint(0, r - 1), r)
        f2 = Fraction(rng.randint(0, r - 1), r)
        lhs = breve_lift(f1 + f2, N)
        assert lhs == (breve_lift(f1, N) + breve_lift(f2, N)) % N
        done += 1
    assert breve_lift(Fraction(2, 3), 5) == 4
    with pytest.raises(NonCoprimeDenominator):
        breve_lift(Fraction(1, 5), 5)
    _report(9, True, "1000 random additivity cases")


@pytest.mark.criterion(10, "negative control: perturbed P(1,1,3) fails rigidity and the CLI exits nonzero")
def test_criterion_10_negative_control(models):
    g = modified_orbifold_genus(models["p113_corrupted"], 1, 5, 2)
    rep = check_rigidity(g)
    assert not rep.passed
    assert rep.details["firstFailure"]["q"] == "0"
    proc = subprocess.run(
        [sys.executable, "-m", "orbigenus", "check", "--suite", "all",
         "--model", fixture_path("p113_corrupted"), "--samples", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1, proc.stderr
    assert '"passed": false' in proc.stdout
    _report(10, True, f"first failure at q^{rep.details['firstFailure']['q']}, exit {proc.returncode}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
