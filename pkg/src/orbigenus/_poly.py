"""Dense univariate polynomials over a field, as coefficient lists.

Coefficients are field elements supporting +, -, * and either ``inverse()``
or true division (Cyclotomic and Fraction both qualify).  Index i holds the
coefficient of x**i.  These helpers back the gcd reduction of rational
functions and nothing else.
"""

from __future__ import annotations


def _inv(c):
    inv = getattr(c, "inverse", None)
    return inv() if inv is not None else 1 / c


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def mul(a, b):
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            v = x * y
            out[i + j] = v if out[i + j] is None else out[i + j] + v
    zero = a[0] - a[0]
    return trim([zero if c is None else c for c in out])


def divmod_poly(a, b):
    """Quotient and remainder of a by b (b nonzero)."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    if len(a) < len(b):
        return [], trim(a)
    lead_inv = _inv(b[-1])
    q = [None] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * lead_inv
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                if bj:
                    a[i + j] = a[i + j] - c * bj
    return trim(q), trim(a[: len(b) - 1])


def exact_quotient(a, b):
    """a / b when b(0) == 1 and the division is exact, else None.

    Works from the constant term upward, so no field inversion is needed.
    """
    a = trim(a)
    b = trim(b)
    if not a:
        return []
    if len(a) < len(b):
        return None
    n = len(a) - len(b) + 1
    work = list(a)
    q = []
    for k in range(n):
        c = work[k]
        q.append(c)
        if c:
            for j in range(1, len(b)):
                if b[j]:
                    work[k + j] = work[k + j] - c * b[j]
    if any(work[n:]):
        return None
    return trim(q)


def monic(p):
    p = trim(p)
    if not p:
        return p
    inv = _inv(p[-1])
    return [c * inv for c in p]


def gcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    a, b = trim(a), trim(b)
    while b:
        if len(b) == 1:
            return monic(b)
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)
