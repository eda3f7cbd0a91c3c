"""Exact arithmetic on integer polynomials stored as coefficient lists.

Coefficient lists run from the constant term upwards.  ``[]`` is the zero
polynomial; otherwise the last entry is nonzero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

from .padic import valuation_int


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    p = trim(p)
    return len(p) - 1 if p else -1


def add(a, b):
    return trim(x + y for x, y in zip_longest(a, b, fillvalue=0))


def sub(a, b):
    return trim(x - y for x, y in zip_longest(a, b, fillvalue=0))


def scale(a, c):
    return trim(c * x for x in a)


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_monic(f, g):
    """Quotient and remainder of ``f`` by the monic integer polynomial ``g``."""
    g = trim(g)
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    r = trim(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    q = [0] * (len(r) - dg)
    r = list(r)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
    return trim(q), trim(r[:dg])


def mulmod(a, b, m):
    return divmod_monic(mul(a, b), m)[1]


def powmod(a, e: int, m):
    result = [1]
    base = divmod_monic(a, m)[1]
    while e:
        if e & 1:
            result = mulmod(result, base, m)
        e >>= 1
        if e:
            base = mulmod(base, base, m)
    return divmod_monic(result, m)[1]


def det(matrix) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss elimination)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def norm(g, f) -> int:
    """Norm of ``g`` in Z[T]/(f) for monic ``f``, i.e. the product of g over the roots of f."""
    f = trim(f)
    n = len(f) - 1
    if n <= 0:
        return 1
    g = divmod_monic(g, f)[1]
    cols = []
    h = g
    for _ in range(n):
        cols.append(h + [0] * (n - len(h)))
        h = mulmod(h, [0, 1], f)
    return det([[cols[j][i] for j in range(n)] for i in range(n)])


def sylvester(f, g):
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g)) + [0] * (size - n - 1 - i))
    return rows


def resultant(f, g) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f."""
    f, g = trim(f), trim(g)
    if not f or not g:
        return 0
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    if f[-1] == 1:
        return norm(g, f)
    if g[-1] == 1:
        return (-1) ** (m * n) * norm(f, g)
    return det(sylvester(f, g))


def gcd_monic(a, b):
    """Monic gcd over Q of two integer polynomials (exact Euclid on fractions)."""
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    while b:
        # remainder of a by b
        r = list(a)
        db = len(b) - 1
        while len(r) - 1 >= db and r:
            c = r[-1] / b[-1]
            shift = len(r) - 1 - db
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
            r = trim(r)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def content_valuation(p, prime: int):
    """Minimum l-adic valuation over the coefficients (``inf`` for zero)."""
    return min((valuation_int(c, prime) for c in p), default=float("inf"))


def root_valuations(p, prime: int):
    """Valuations of the roots of ``p`` in C_l, read off its Newton polygon.

    Returns a list of ``(valuation, multiplicity)`` pairs with Fraction
    valuations; roots equal to 0 are reported with valuation ``inf``.
    """
    p = trim(p)
    zeros = 0
    while p and p[0] == 0:
        p.pop(0)
        zeros += 1
    out = []
    if zeros:
        out.append((float("inf"), zeros))
    pts = [(i, valuation_int(c, prime)) for i, c in enumerate(p) if c]
    # lower convex hull, left to right
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    return out


def to_str(p, var: str = "T") -> str:
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            power = var if i == 1 else f"{var}^{i}"
            mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, mono))
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, mono in terms[1:]:
        s += f" {sign} {mono}"
    return s
