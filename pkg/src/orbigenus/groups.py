"""Finite groups given by multiplication tables, and their sector combinatorics.

Elements are integer indices 0..order-1.  The enumerations here (conjugacy
classes, centralizers, commuting pairs and their classes under simultaneous
conjugation) are brute force, which is all the isotropy groups of desk-scale
models need.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonAbelianGroup, SchemaError

__all__ = [
    "FiniteGroup",
    "ConjClass",
    "DoubleClass",
    "conjugacy_classes",
    "centralizer",
    "commuting_pairs",
    "double_classes",
    "character_validate",
]


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple


@dataclass(frozen=True)
class DoubleClass:
    representative: tuple
    members: tuple


class FiniteGroup:
    """A finite group from its multiplication table.

    ``table[a][b]`` is the index of a*b.  The table is validated on
    construction.  ``spec`` records the JSON description the group came from,
    so models can be saved back unchanged.
    """

    def __init__(self, table, spec=None, validate: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.spec = spec if spec is not None else {"kind": "table", "table": [list(r) for r in self.table]}
        if validate:
            self._validate()
        self.identity = next(
            e for e in range(self.order) if all(self.table[e][g] == g for g in range(self.order))
        )
        self.is_abelian = all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )
        self._inverse = tuple(
            next(b for b in range(self.order) if self.table[a][b] == self.identity)
            for a in range(self.order)
        )

    def _validate(self):
        n = self.order
        if n == 0:
            raise SchemaError("group", "empty multiplication table")
        T = self.table
        for row in T:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise SchemaError("group", "table is not square over its index set")
        ids = [e for e in range(n) if all(T[e][g] == g and T[g][e] == g for g in range(n))]
        if not ids:
            raise SchemaError("group", "no identity element")
        e = ids[0]
        for a in range(n):
            if not any(T[a][b] == e for b in range(n)):
                raise SchemaError("group", f"element {a} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if T[T[a][b]][c] != T[a][T[b][c]]:
                raise SchemaError("group", f"associativity fails at ({a}, {b}, {c})")

    # -- constructors

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        """Z/n with element s standing for generator^s."""
        if n < 1:
            raise SchemaError("group", "cyclic order must be positive")
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(table, {"kind": "cyclic", "n": n}, validate=False)

    @classmethod
    def product(cls, orders) -> "FiniteGroup":
        """Z/n1 x ... x Z/nk; index is row-major with the last factor fastest."""
        orders = [int(n) for n in orders]
        if not orders or any(n < 1 for n in orders):
            raise SchemaError("group", "product factors must be positive")
        elems = list(itertools.product(*[range(n) for n in orders]))
        index = {e: i for i, e in enumerate(elems)}
        table = [
            [index[tuple((x + y) % n for x, y, n in zip(a, b, orders))] for b in elems]
            for a in elems
        ]
        g = cls(table, {"kind": "product", "orders": orders}, validate=False)
        g.components = tuple(elems)
        return g

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        """S_n on permutations in itertools order (identity first)."""
        if not 1 <= n <= 5:
            raise SchemaError("group", "symmetric groups are supported for n <= 5")
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # (a*b)(x) = a(b(x))
        table = [[index[tuple(a[b[x]] for x in range(n))] for b in perms] for a in perms]
        g = cls(table, {"kind": "symmetric", "n": n}, validate=False)
        g.permutations = tuple(perms)
        return g

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls.cyclic(1)

    @classmethod
    def from_json(cls, spec) -> "FiniteGroup":
        if not isinstance(spec, dict) or "kind" not in spec:
            raise SchemaError("isotropy", "group description needs a 'kind'")
        kind = spec["kind"]
        if kind == "cyclic":
            return cls.cyclic(int(spec["n"]))
        if kind == "product":
            return cls.product(spec["orders"])
        if kind == "symmetric":
            return cls.symmetric(int(spec["n"]))
        if kind == "table":
            return cls(spec["table"])
        raise SchemaError("isotropy", f"unknown group kind {kind!r}")

    def to_json(self):
        return dict(self.spec)

    # -- basic operations

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.table[self.table[g][h]][self._inverse[g]]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        for _ in range(k % self.element_order(a)):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.spec})"


def conjugacy_classes(G: FiniteGroup) -> list:
    seen = set()
    out = []
    for h in G.elements():
        if h in seen:
            continue
        orbit = sorted({G.conjugate(g, h) for g in G.elements()})
        seen.update(orbit)
        out.append(ConjClass(h, tuple(orbit)))
    return out


def centralizer(G: FiniteGroup, h: int) -> tuple:
    return tuple(g for g in G.elements() if G.mul(g, h) == G.mul(h, g))


def commuting_pairs(G: FiniteGroup) -> list:
    return [
        (a, b) for a in G.elements() for b in G.elements() if G.mul(a, b) == G.mul(b, a)
    ]


def double_classes(G: FiniteGroup) -> list:
    """Orbits of commuting pairs under simultaneous conjugation."""
    seen = set()
    out = []
    for pair in commuting_pairs(G):
        if pair in seen:
            continue
        a, b = pair
        orbit = sorted({(G.conjugate(g, a), G.conjugate(g, b)) for g in G.elements()})
        seen.update(orbit)
        out.append(DoubleClass(pair, tuple(orbit)))
    return out


def subgroup_conjugacy_count(G: FiniteGroup, elements) -> int:
    """Number of conjugacy classes of the subgroup on ``elements``."""
    elements = tuple(elements)
    seen = set()
    count = 0
    for h in elements:
        if h in seen:
            continue
        seen.update(G.conjugate(g, h) for g in elements)
        count += 1
    return count


def character_validate(G: FiniteGroup, chi) -> bool:
    """True iff chi: element -> [0, 1) is a homomorphism to Q/Z.

    ``chi`` may be a mapping or a sequence indexed by element.
    """
    if not G.is_abelian:
        raise NonAbelianGroup("characters are only validated on abelian groups")
    vals = [Fraction(chi[g]) for g in G.elements()]
    if any(not 0 <= v < 1 for v in vals):
        return False
    if vals[G.identity] != 0:
        return False
    for g in G.elements():
        if G.element_order(g) % vals[g].denominator:
            return False
    for a in G.elements():
        for b in G.elements():
            if (vals[a] + vals[b] - vals[G.mul(a, b)]).denominator != 1:
                return False
    return True


def characters_of_cyclic(n: int):
    """All characters of Z/n as value tuples: s -> j*s/n mod 1."""
    return [tuple(Fraction(j * s % n, n) for s in range(n)) for j in range(n)]


def exponent(G: FiniteGroup) -> int:
    e = 1
    for g in G.elements():
        e = e * G.element_order(g) // math.gcd(e, G.element_order(g))
    return e
