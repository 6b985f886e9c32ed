"""Command line: compute genera, run check suites, generate and inspect models.

Exit codes: 0 success (all checks passed), 1 a check failed, 2 bad arguments
or an invalid model file, 3 an evaluator error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .errors import DegenerateAction, OrbigenusError, ParseError, SchemaError
from .genera import (
    SigmaSpec,
    age_f,
    breve_lift,
    equivariant_elliptic_genus,
    modified_orbifold_genus,
    orbifold_elliptic_genus,
    ty_family,
)
from .groups import commuting_pairs, conjugacy_classes, double_classes
from .model import load_model, save_model, validate_model, weighted_projective_model
from .verify import (
    MATRICES,
    check_divisibility,
    check_modular_numeric,
    check_rigidity,
    cross_check_q0,
    predict_and_check_vanishing,
    ty_limit_decomposition,
)

GENERA = ("elliptic", "orbifold", "modified", "ty", "hat-ty", "breve-ty", "todd")
SUITES = ("rigidity", "modular", "vanishing", "tylimits", "divisibility", "q0", "all")


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _order(text):
    try:
        K = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad truncation order {text!r}") from None
    if K < 0:
        raise UsageError("truncation order must be non-negative")
    return K


def _sigma(args, need_level=False):
    """SigmaSpec from --sigma, or from --k/--level."""
    if args.sigma is not None:
        try:
            s = SigmaSpec.parse(args.sigma)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if not s.is_formal and not 0 < s.k < s.N:
            raise UsageError(f"k out of range: sigma = {args.sigma} needs 0 < k < N")
        return s
    if args.level is not None:
        k = args.k if args.k is not None else 1
        if not 0 < k < args.level:
            raise UsageError(f"k out of range: need 0 < k < {args.level}")
        return SigmaSpec.rational(k, args.level)
    if need_level:
        raise UsageError("this genus needs --sigma k/N or --level N")
    return SigmaSpec.formal()


def _level(args, m):
    N = args.level
    if N is None and args.sigma not in (None, "formal"):
        N = _sigma(args).N
    if N is None and m is not None and m.bundle is not None:
        N = m.bundle.N
    if N is None:
        raise UsageError("no level: pass --level N")
    k = args.k if args.k is not None else 1
    if args.sigma not in (None, "formal"):
        k = _sigma(args).k
    if not 0 < k < N:
        raise UsageError(f"k out of range: need 0 < k < {N}")
    return k, N


def _load(args):
    if not args.model:
        raise UsageError("--model is required")
    return load_model(args.model)


# -- verbs -------------------------------------------------------------------


def cmd_compute(args, out):
    m = _load(args)
    K = _order(args.order)
    g = args.genus
    if g == "elliptic":
        res = equivariant_elliptic_genus(m, _sigma(args), K)
    elif g == "orbifold":
        res = orbifold_elliptic_genus(m, _sigma(args), K)
    elif g == "modified":
        k, N = _level(args, m)
        res = modified_orbifold_genus(m, k, N, K)
    elif g == "ty":
        res = ty_family(m, "ty")
    elif g == "hat-ty":
        res = ty_family(m, "hatTy")
    elif g == "breve-ty":
        _, N = _level(args, m)
        res = ty_family(m, "breveTy", N=N)
    else:
        res = ty_family(m, "todd")
    if args.out == "json":
        out.write(json.dumps(res.to_json()) + "\n")
    elif g == "todd":
        out.write(f"{res.coefficient(0)}\n")
    else:
        out.write(_text(res) + "\n")
    return 0


def _text(res):
    lines = [f"# {res.kind} genus of {res.model}, sigma = {res.sigma}, K = {res.K}"]
    r = res.series.q_denom
    for e in range(0, res.series.max_index + 1):
        q = Fraction(e, r)
        lines.append(f"q^{q}: {res.series.coefficient(q)}")
    return "\n".join(lines)


def _default_rigidity_genus(m, N):
    if m.is_manifold:
        return "elliptic"
    if all(math.gcd(p.order, N) == 1 for p in m.fixed_points):
        return "modified"
    return "orbifold"


def _rigidity(args, m):
    k, N = _level(args, m)
    K = _order(args.order if args.order is not None else "2")
    kind = args.genus or _default_rigidity_genus(m, N)
    if kind == "elliptic":
        g = equivariant_elliptic_genus(m, SigmaSpec.rational(k, N), K)
    elif kind == "orbifold":
        g = orbifold_elliptic_genus(m, SigmaSpec.rational(k, N), K)
    elif kind == "modified":
        g = modified_orbifold_genus(m, k, N, K)
    else:
        raise UsageError(f"rigidity applies to elliptic, orbifold or modified, not {kind}")
    return [check_rigidity(g)]


def _modular(args):
    mats = [args.matrix] if args.matrix else list(MATRICES)
    for A in mats:
        if A not in MATRICES:
            raise UsageError(f"unknown matrix {A!r}; choose from {', '.join(MATRICES)}")
    K = int(_order(args.order)) if args.order is not None else 60
    reps = []
    for law in ("capitalPhi", "phiSL2"):
        for A in mats:
            reps.append(check_modular_numeric(law, A, args.samples, K, args.tol, args.seed))
    reps.append(check_modular_numeric("phiLattice", None, args.samples, K, args.tol, args.seed))
    return reps


def _vanishing(args, m):
    k, N = _level(args, m)
    K = _order(args.order if args.order is not None else "2")
    reps = []
    if all(math.gcd(p.order, N) == 1 for p in m.fixed_points):
        reps.append(predict_and_check_vanishing(m, ("modified", N, k), K))
    reps.append(predict_and_check_vanishing(m, ("orbifold", N, k), K))
    return reps


def _divisibility(args, m):
    _, N = _level(args, m)
    return [check_divisibility(m, N)]


def _q0(args, m):
    k, N = _level(args, m)
    return [cross_check_q0(m, k, N)]


def cmd_check(args, out):
    suite = args.suite
    reports = []
    if suite == "modular":
        reports = _modular(args)
    else:
        m = _load(args)
        diags = validate_model(m)
        for d in diags:
            print(f"model diagnostic: {d}", file=sys.stderr)
        if suite in ("rigidity", "all"):
            reports += _rigidity(args, m)
        if suite in ("vanishing", "all"):
            reports += _vanishing(args, m)
        if suite in ("tylimits", "all"):
            reports.append(ty_limit_decomposition(m))
        if suite in ("divisibility", "all"):
            if suite == "divisibility" or (m.bundle is not None and m.bundle.genuine):
                reports += _divisibility(args, m)
        if suite in ("q0", "all"):
            reports += _q0(args, m)
        if suite == "all":
            reports += _modular(args)
    for r in reports:
        out.write(r.dumps() + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_generate(args, out):
    if args.kind != "wps":
        raise UsageError(f"unknown model kind {args.kind!r}")
    if not args.a or not args.c:
        raise UsageError("generate wps needs --a and --c")
    try:
        m = weighted_projective_model(_ints(args.a), _ints(args.c), args.level)
    except DegenerateAction:
        raise
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = save_model(m)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out} (N = {m.bundle.N}, l = {m.bundle.l}, "
              f"suggested levels {m.meta['suggested_levels']})", file=sys.stderr)
    else:
        out.write(text)
    return 0


def cmd_sectors(args, out):
    m = _load(args)
    N = args.level if args.level is not None else (m.bundle.N if m.bundle else None)
    data = {"model": m.name, "n": m.n, "r": m.r, "points": []}
    for p in m.fixed_points:
        G = p.isotropy
        entry = {
            "label": p.label,
            "order": G.order,
            "abelian": G.is_abelian,
            "conjugacyClasses": [list(c.members) for c in conjugacy_classes(G)],
            "commutingPairs": len(commuting_pairs(G)),
            "doubleClasses": len(double_classes(G)),
        }
        if G.is_abelian:
            ages = []
            for h in G.elements():
                f = age_f(p, h)
                row = {"element": h, "age": str(f)}
                if N is not None and math.gcd(f.denominator, N) == 1:
                    row["breve"] = breve_lift(f, N)
                ages.append(row)
            entry["ages"] = ages
        data["points"].append(entry)
    if args.out == "json":
        out.write(json.dumps(data) + "\n")
    else:
        out.write(f"# sectors of {m.name} (n = {m.n}, r = {m.r})\n")
        for e in data["points"]:
            out.write(
                f"{e['label']}: |H| = {e['order']}, classes = {len(e['conjugacyClasses'])}, "
                f"|CM| = {e['commutingPairs']}, |double classes| = {e['doubleClasses']}\n"
            )
            for row in e.get("ages", []):
                extra = f", breve = {row['breve']}" if "breve" in row else ""
                out.write(f"  h = {row['element']}: age = {row['age']}{extra}\n")
    return 0


# -- entry point -------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="orbigenus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--model", help="model JSON file")
        sp.add_argument("--sigma", help="k/N or formal")
        sp.add_argument("--level", type=int, help="level N")
        sp.add_argument("--k", type=int, help="numerator k of sigma = k/N")
        sp.add_argument("--order", help="truncation order K (p/r accepted)")

    c = sub.add_parser("compute", help="compute a genus")
    common(c)
    c.add_argument("--genus", choices=GENERA, default="elliptic")
    c.add_argument("--out", choices=("json", "text"), default="text")

    k = sub.add_parser("check", help="run a check suite")
    common(k)
    k.add_argument("--suite", choices=SUITES, default="all")
    k.add_argument("--genus", choices=("elliptic", "orbifold", "modified"))
    k.add_argument("--tol", type=float, default=1e-8)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--matrix", help="I, T, S or TS (default: all)")
    k.add_argument("--samples", type=int, default=20)

    g = sub.add_parser("generate", help="generate a fixture model")
    g.add_argument("kind", choices=("wps",))
    g.add_argument("--a", required=True)
    g.add_argument("--c", required=True)
    g.add_argument("--level", type=int)
    g.add_argument("--out", help="output path (default: stdout)")

    s = sub.add_parser("sectors", help="print sector combinatorics")
    s.add_argument("--model", required=True)
    s.add_argument("--level", type=int)
    s.add_argument("--out", choices=("json", "text"), default="text")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if args.verb == "compute" and args.order is None:
        args.order = "0" if args.genus in ("ty", "hat-ty", "breve-ty", "todd") else "2"
    verbs = {"compute": cmd_compute, "check": cmd_check, "generate": cmd_generate, "sectors": cmd_sectors}
    try:
        return verbs[args.verb](args, out)
    except (UsageError, SchemaError, ParseError, DegenerateAction, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OrbigenusError as e:
        print(f"evaluator error ({type(e).__name__}): {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
