"""Fixed-point data of circle actions on orbifolds, and its JSON format.

A model lists the isolated fixed points of the circle action.  Each point
carries its isotropy group and, for every tangent line, the rational
t-exponent of the circle action together with the character by which the
isotropy group acts.  Optional line-bundle data (an N-th root of the
determinant of the tangent bundle) feeds the level-N checks.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateAction, ParseError, SchemaError
from .groups import FiniteGroup, character_validate

__all__ = [
    "TangentWeight",
    "LineBundleDatum",
    "FixedPointDatum",
    "LineBundlePolicy",
    "OrbifoldModel",
    "Diagnostic",
    "validate_model",
    "weighted_projective_model",
    "suggested_levels",
    "load_model",
    "save_model",
    "model_io",
]


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TangentWeight:
    m_s1: Fraction
    chi: tuple  # chi[g] in [0, 1) for every element index g


@dataclass(frozen=True)
class LineBundleDatum:
    m_s1: Fraction
    chi: tuple


@dataclass(frozen=True)
class FixedPointDatum:
    label: str
    isotropy: FiniteGroup
    weights: tuple
    line_bundle: LineBundleDatum | None = None

    @property
    def order(self) -> int:
        return self.isotropy.order


@dataclass(frozen=True)
class LineBundlePolicy:
    N: int
    l: int
    genuine: bool = False
    normalize_weight_sums: bool = True


@dataclass(frozen=True)
class OrbifoldModel:
    name: str
    n: int
    fixed_points: tuple
    bundle: LineBundlePolicy | None = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def r(self) -> int:
        """lcm of the isotropy orders."""
        out = 1
        for p in self.fixed_points:
            out = out * p.order // math.gcd(out, p.order)
        return out

    @property
    def is_manifold(self) -> bool:
        return all(p.order == 1 for p in self.fixed_points)

    def with_bundle(self, bundle) -> "OrbifoldModel":
        return OrbifoldModel(self.name, self.n, self.fixed_points, bundle, dict(self.meta))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    point: str | None
    message: str

    def __str__(self):
        where = f"[{self.point}] " if self.point else ""
        return f"{self.code}: {where}{self.message}"


def validate_model(m: OrbifoldModel) -> list:
    """Return diagnostics; an empty list means the model is consistent."""
    out = []
    if not m.fixed_points:
        out.append(Diagnostic("empty", None, "model has no fixed points"))
        return out
    ls = []
    for p in m.fixed_points:
        G = p.isotropy
        if len(p.weights) != m.n:
            out.append(Diagnostic("dimension", p.label, f"{len(p.weights)} weights for n = {m.n}"))
        if not G.is_abelian:
            out.append(Diagnostic("non-abelian", p.label, "isotropy group is not abelian"))
            continue
        for i, w in enumerate(p.weights):
            if w.m_s1 == 0:
                out.append(
                    Diagnostic("non-isolated", p.label, f"non-isolated fixed point: weight {i} has zero t-exponent")
                )
            if len(w.chi) != G.order or not character_validate(G, w.chi):
                out.append(Diagnostic("character", p.label, f"weight {i} is not a character"))
        # an element acting trivially on every tangent line makes the chart
        # non-effective, which the sector sums do not expect
        for g in G.elements():
            if g != G.identity and all(w.chi[g] == 0 for w in p.weights):
                out.append(Diagnostic("non-effective", p.label, f"element {g} acts trivially"))
                break
        if m.bundle is None:
            continue
        L = p.line_bundle
        if L is None:
            out.append(Diagnostic("line-bundle", p.label, "bundle policy present but no fiber data"))
            continue
        if len(L.chi) != G.order or not character_validate(G, L.chi):
            out.append(Diagnostic("character", p.label, "line-bundle weight is not a character"))
            continue
        N = m.bundle.N
        l_here = sum(w.m_s1 for w in p.weights) - N * L.m_s1
        ls.append((p.label, l_here))
        if m.bundle.genuine and any(L.chi):
            out.append(Diagnostic("genuine", p.label, "isotropy acts on the fiber of a genuine bundle"))
        if m.bundle.normalize_weight_sums:
            for g in G.elements():
                lhs = sum(w.chi[g] for w in p.weights)
                if (lhs - N * L.chi[g]).denominator != 1:
                    out.append(
                        Diagnostic("weightsum", p.label, f"weight sum at element {g} is not N times the fiber weight")
                    )
                    break
        if m.bundle.genuine:
            for g in G.elements():
                f = sum(w.chi[g] for w in p.weights)
                if f.denominator != 1:
                    out.append(Diagnostic("age", p.label, f"age at element {g} is not an integer"))
                    break
    if m.bundle is not None:
        for label, l_here in ls:
            if l_here.denominator != 1 or l_here != m.bundle.l:
                out.append(
                    Diagnostic("equilib", label, f"equilib violated: l = {l_here}, expected {m.bundle.l}")
                )
    return out


# -- weighted projective spaces ------------------------------------------------


def suggested_levels(a) -> list:
    """Divisors N > 1 of sum(a) coprime to every a_j, largest first."""
    S = sum(a)
    return [N for N in range(S, 1, -1) if S % N == 0 and all(math.gcd(N, x) == 1 for x in a)]


def genuine_levels(a) -> list:
    """Divisors N > 1 of sum(a) for which O(sum(a)/N) is a genuine bundle."""
    S = sum(a)
    return [N for N in range(S, 1, -1) if S % N == 0 and all((S // N) % x == 0 for x in a)]


def weighted_projective_model(a, c, N: int | None = None, name: str | None = None) -> OrbifoldModel:
    """Fixed-point data of P(a_0, ..., a_n) with the action t.[z] = [t^c_i z_i].

    Point j is [e_j], with isotropy Z/a_j.  The line bundle is O(d) with
    d = sum(a) / N, so its N-th power is the anticanonical bundle O(sum(a)).
    """
    a = [int(x) for x in a]
    c = [int(x) for x in c]
    if len(a) != len(c) or len(a) < 2:
        raise ValueError("a and c must have the same length >= 2")
    if any(x <= 0 for x in a):
        raise ValueError("weights a must be positive")
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if c[i] * a[j] == c[j] * a[i]:
                raise DegenerateAction(f"c_{i} a_{j} = c_{j} a_{i}: fixed points are not isolated")
    S = sum(a)
    if N is None:
        levels = suggested_levels(a) or genuine_levels(a) or [S]
        N = levels[0]
    if N < 2 or S % N:
        raise ValueError(f"level N = {N} must be > 1 and divide sum(a) = {S}")
    d = S // N
    points = []
    for j, aj in enumerate(a):
        G = FiniteGroup.cyclic(aj)
        weights = []
        for i, ai in enumerate(a):
            if i == j:
                continue
            chi = tuple(Fraction(s * ai % aj, aj) for s in range(aj))
            weights.append(TangentWeight(Fraction(c[i] * aj - c[j] * ai, aj), chi))
        L = LineBundleDatum(
            Fraction(-d * c[j], aj), tuple(Fraction(s * d % aj, aj) for s in range(aj))
        )
        points.append(FixedPointDatum(f"p{j}", G, tuple(weights), L))
    genuine = all(d % x == 0 for x in a)
    bundle = LineBundlePolicy(N=N, l=sum(c), genuine=genuine, normalize_weight_sums=True)
    meta = {
        "a": a,
        "c": c,
        "suggested_levels": suggested_levels(a),
        "genuine_levels": genuine_levels(a),
    }
    label = name or "P(" + ",".join(map(str, a)) + ")"
    return OrbifoldModel(label, len(a) - 1, tuple(points), bundle, meta)


# -- JSON ------------------------------------------------------------------------


def _rat(x, fld):
    try:
        if isinstance(x, bool):
            raise ValueError
        if isinstance(x, int):
            return Fraction(x)
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(fld, f"{fld}: {x!r} is not a rational 'p/q'") from None


def _need(obj, key, where=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(key, f"missing field {key!r}" + (f" in {where}" if where else ""))
    return obj[key]


def _chi_from_json(G, data, fld):
    if not isinstance(data, dict):
        raise SchemaError(fld, f"{fld} must map element indices to rationals")
    vals = [Fraction(0)] * G.order
    for k, v in data.items():
        try:
            g = int(k)
        except ValueError:
            raise SchemaError(fld, f"bad element index {k!r}") from None
        if not 0 <= g < G.order:
            raise SchemaError(fld, f"element index {g} outside the group")
        vals[g] = _rat(v, fld)
    return tuple(vals)


def _chi_to_json(chi):
    return {str(g): _frac_str(v) for g, v in enumerate(chi)}


def model_to_dict(m: OrbifoldModel) -> dict:
    out = {"name": m.name, "n": m.n, "fixedPoints": []}
    for p in m.fixed_points:
        d = {
            "label": p.label,
            "isotropy": p.isotropy.to_json(),
            "weights": [{"mS1": _frac_str(w.m_s1), "chi": _chi_to_json(w.chi)} for w in p.weights],
        }
        if p.line_bundle is not None:
            d["lineBundle"] = {
                "mS1": _frac_str(p.line_bundle.m_s1),
                "chi": _chi_to_json(p.line_bundle.chi),
            }
        out["fixedPoints"].append(d)
    if m.bundle is not None:
        b = m.bundle
        out["bundle"] = {
            "N": b.N,
            "l": b.l,
            "genuine": b.genuine,
            "normalizeWeightSums": b.normalize_weight_sums,
        }
    if m.meta:
        out["meta"] = m.meta
    return out


def model_from_dict(data) -> OrbifoldModel:
    name = str(_need(data, "name"))
    n = _need(data, "n")
    if not isinstance(n, int) or n < 0:
        raise SchemaError("n", "n must be a non-negative integer")
    pts = _need(data, "fixedPoints")
    if not isinstance(pts, list) or not pts:
        raise SchemaError("fixedPoints", "fixedPoints must be a non-empty list")
    points = []
    for k, pd in enumerate(pts):
        label = str(pd.get("label", f"p{k}")) if isinstance(pd, dict) else f"p{k}"
        G = FiniteGroup.from_json(_need(pd, "isotropy", label))
        wl = _need(pd, "weights", label)
        if not isinstance(wl, list):
            raise SchemaError("weights", "weights must be a list")
        if len(wl) != n:
            raise SchemaError("dimension", f"{label}: {len(wl)} weights for n = {n}")
        weights = []
        for wd in wl:
            chi = _chi_from_json(G, _need(wd, "chi", label), "chi")
            if G.is_abelian and not character_validate(G, chi):
                raise SchemaError("character", f"{label}: tangent weight is not a character")
            weights.append(TangentWeight(_rat(_need(wd, "mS1", label), "mS1"), chi))
        L = None
        if "lineBundle" in pd:
            ld = pd["lineBundle"]
            chi = _chi_from_json(G, _need(ld, "chi", label), "chi")
            if G.is_abelian and not character_validate(G, chi):
                raise SchemaError("character", f"{label}: line-bundle weight is not a character")
            L = LineBundleDatum(_rat(_need(ld, "mS1", label), "mS1"), chi)
        points.append(FixedPointDatum(label, G, tuple(weights), L))
    bundle = None
    if "bundle" in data:
        bd = data["bundle"]
        N = _need(bd, "N", "bundle")
        l = _need(bd, "l", "bundle")
        if not isinstance(N, int) or N < 2:
            raise SchemaError("N", "bundle N must be an integer > 1")
        if not isinstance(l, int):
            raise SchemaError("l", "bundle l must be an integer")
        bundle = LineBundlePolicy(
            N, l, bool(bd.get("genuine", False)), bool(bd.get("normalizeWeightSums", True))
        )
    return OrbifoldModel(name, n, tuple(points), bundle, dict(data.get("meta", {})))


def save_model(m: OrbifoldModel, path=None) -> str:
    text = json.dumps(model_to_dict(m), indent=2) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def load_model(source) -> OrbifoldModel:
    """Load from a path or from JSON text (anything starting with '{')."""
    text = str(source)
    if not text.lstrip().startswith("{"):
        with open(text) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("model must be a JSON object", line=1)
    return model_from_dict(data)


def model_io(direction: str, arg, path=None):
    if direction == "load":
        return load_model(arg)
    if direction == "save":
        return save_model(arg, path)
    raise ValueError(f"unknown direction {direction!r}")
