"""Truncated power series rings Z_l[[T]] and Z_l[[T_1, ..., T_d]].

Elements carry two explicit truncations: the absolute l-adic precision ``N``
of every coefficient and the T-degree ``D`` beyond which nothing is stored.
Products truncate at the smaller degree and the smaller precision.

Weierstrass preparation and division act on the stored degree-``D``
polynomial.  For a polynomial the distinguished factor and the unit are
polynomials too, so both are exact modulo ``l**N`` with no loss from the
T-truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import polynomials as poly
from .errors import NotDistinguished, PrecisionExhausted, TruncationTooSmall
from .padic import Infinite, PadicInt, binomial_power, legendre, valuation_int

DEFAULT_PRECISION = 16
DEFAULT_DEGREE = 64

__all__ = [
    "DEFAULT_PRECISION",
    "DEFAULT_DEGREE",
    "LambdaSeries",
    "LambdaDSeries",
    "DistinguishedPoly",
    "CharacterMap",
    "Preparation",
    "Division",
    "omega",
    "omega_poly",
    "is_distinguished",
    "weierstrass_prepare",
    "weierstrass_divide",
    "specialize",
    "in_maximal_ideal",
]


def _balanced(r: int, modulus: int) -> int:
    r %= modulus
    return r - modulus if 2 * r > modulus else r


def _parse_int(x) -> int:
    return int(x) if isinstance(x, str) else x


class LambdaSeries:
    """An element of Z_l[[T]] known mod ``(l**precision, T**(degree + 1))``."""

    __slots__ = ("ell", "precision", "degree", "coeffs")

    def __init__(self, ell: int, coeffs: Sequence[int] = (), precision: int = DEFAULT_PRECISION,
                 degree: int | None = None):
        if precision < 1:
            raise PrecisionExhausted(f"precision {precision} < 1")
        coeffs = [int(c) for c in coeffs]
        if degree is None:
            degree = max(DEFAULT_DEGREE, len(coeffs) - 1)
        if degree < 0:
            raise ValueError("degree must be non-negative")
        m = ell**precision
        coeffs = [c % m for c in coeffs[: degree + 1]]
        coeffs += [0] * (degree + 1 - len(coeffs))
        self.ell = ell
        self.precision = precision
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @property
    def modulus(self) -> int:
        return self.ell**self.precision

    # -- construction helpers -------------------------------------------------
    @classmethod
    def T(cls, ell, precision=DEFAULT_PRECISION, degree=DEFAULT_DEGREE):
        return cls(ell, [0, 1], precision, degree)

    @classmethod
    def constant(cls, ell, c, precision=DEFAULT_PRECISION, degree=DEFAULT_DEGREE):
        return cls(ell, [c], precision, degree)

    def _like(self, coeffs, precision=None, degree=None):
        return LambdaSeries(self.ell, coeffs,
                            self.precision if precision is None else precision,
                            self.degree if degree is None else degree)

    def coefficient(self, i: int) -> PadicInt:
        c = self.coeffs[i] if i <= self.degree else 0
        return PadicInt(self.ell, self.precision, c)

    def __getitem__(self, i):
        return self.coefficient(i)

    # -- ring operations ------------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return self._like([other])
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        if other.ell != self.ell:
            raise ValueError(f"mixed primes {self.ell} and {other.ell}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = min(self.degree, other.degree)
        return self._like([a + b for a, b in zip(self.coeffs[: d + 1], other.coeffs)],
                          min(self.precision, other.precision), d)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PadicInt):
            return self._like([c * other.residue for c in self.coeffs],
                              min(self.precision, other.precision))
        if isinstance(other, int):
            return self._like([c * other for c in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = min(self.degree, other.degree)
        n = min(self.precision, other.precision)
        m = self.ell**n
        out = [0] * (d + 1)
        b = other.coeffs
        for i, x in enumerate(self.coeffs[: d + 1]):
            if x:
                for j in range(d + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return self._like([c % m for c in out], n, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self._like([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._like([other])
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        if other.ell != self.ell:
            return False
        d = min(self.degree, other.degree)
        m = self.ell ** min(self.precision, other.precision)
        return all((a - b) % m == 0 for a, b in zip(self.coeffs[: d + 1], other.coeffs[: d + 1]))

    def __hash__(self):
        return hash((self.ell, self.precision, self.degree, self.coeffs))

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self):
        """Minimum coefficient valuation (the mu of the series), or Infinite."""
        vals = [valuation_int(c, self.ell) for c in self.coeffs if c]
        return min(vals) if vals else Infinite(self.precision)

    def weierstrass_degree(self):
        """Index of the first coefficient of minimal valuation, ``None`` for zero."""
        v = self.valuation()
        if isinstance(v, Infinite):
            return None
        for i, c in enumerate(self.coeffs):
            if c and valuation_int(c, self.ell) == v:
                return i

    def polynomial(self, balanced: bool = True):
        """Integer coefficient list (trailing zeros removed)."""
        m = self.modulus
        return poly.trim(_balanced(c, m) if balanced else c for c in self.coeffs)

    def truncate(self, degree: int) -> "LambdaSeries":
        return self._like(self.coeffs, degree=min(degree, self.degree))

    def with_precision(self, precision: int) -> "LambdaSeries":
        return self._like(self.coeffs, precision=min(precision, self.precision))

    def shift_down(self, k: int) -> "LambdaSeries":
        """Divide every coefficient by ``l**k``; precision drops by ``k``."""
        q = self.ell**k
        if any(c % q for c in self.coeffs):
            raise ValueError(f"series is not divisible by {self.ell}^{k}")
        return self._like([c // q for c in self.coeffs], precision=self.precision - k)

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "precision": self.precision,
            "degree": self.degree,
            "coeffs": [str(c) for c in self.coeffs[: max(len(self.polynomial(False)), 1)]],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LambdaSeries":
        coeffs = [_parse_int(c) for c in obj["coeffs"]]
        return cls(int(obj["ell"]), coeffs, int(obj.get("precision", DEFAULT_PRECISION)),
                   obj.get("degree"))

    def __repr__(self):
        return f"{poly.to_str(self.polynomial())} + O({self.ell}^{self.precision}, T^{self.degree + 1})"


class LambdaDSeries:
    """An element of Z_l[[T_1, ..., T_d]] truncated at total degree ``degree``.

    Terms are stored sparsely as ``{exponent tuple: residue}``.
    """

    __slots__ = ("ell", "precision", "nvars", "degree", "terms")

    def __init__(self, ell: int, nvars: int, terms: dict | None = None,
                 precision: int = DEFAULT_PRECISION, degree: int = DEFAULT_DEGREE):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if precision < 1:
            raise PrecisionExhausted(f"precision {precision} < 1")
        m = ell**precision
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp) < 0:
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            if sum(exp) > degree:
                continue
            c = int(c) % m
            if c:
                clean[exp] = (clean.get(exp, 0) + c) % m
        self.ell = ell
        self.precision = precision
        self.nvars = nvars
        self.degree = degree
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def variable(cls, ell, nvars, i, precision=DEFAULT_PRECISION, degree=DEFAULT_DEGREE):
        exp = [0] * nvars
        exp[i] = 1
        return cls(ell, nvars, {tuple(exp): 1}, precision, degree)

    @classmethod
    def constant(cls, ell, nvars, c, precision=DEFAULT_PRECISION, degree=DEFAULT_DEGREE):
        return cls(ell, nvars, {(0,) * nvars: c}, precision, degree)

    def _like(self, terms, precision=None, degree=None):
        return LambdaDSeries(self.ell, self.nvars, terms,
                             self.precision if precision is None else precision,
                             self.degree if degree is None else degree)

    def _check(self, other):
        if isinstance(other, int):
            return self._like({(0,) * self.nvars: other})
        if not isinstance(other, LambdaDSeries):
            return NotImplemented
        if other.ell != self.ell or other.nvars != self.nvars:
            raise ValueError("incompatible multivariate series")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return self._like(terms, min(self.precision, other.precision),
                          min(self.degree, other.degree))

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = min(self.degree, other.degree)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            s1 = sum(e1)
            for e2, c2 in other.terms.items():
                if s1 + sum(e2) > d:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return self._like(terms, min(self.precision, other.precision), d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self._like({(0,) * self.nvars: 1})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._like({(0,) * self.nvars: other})
        if not isinstance(other, LambdaDSeries):
            return NotImplemented
        if other.ell != self.ell or other.nvars != self.nvars:
            return False
        d = min(self.degree, other.degree)
        m = self.ell ** min(self.precision, other.precision)
        keys = {e for e in set(self.terms) | set(other.terms) if sum(e) <= d}
        return all((self.terms.get(e, 0) - other.terms.get(e, 0)) % m == 0 for e in keys)

    def __hash__(self):
        return hash((self.ell, self.nvars, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> PadicInt:
        return PadicInt(self.ell, self.precision, self.terms.get((0,) * self.nvars, 0))

    def to_json(self) -> dict:
        exps = sorted(self.terms)
        return {
            "ell": self.ell,
            "precision": self.precision,
            "degree": self.degree,
            "nvars": self.nvars,
            "exponents": [list(e) for e in exps],
            "coeffs": [str(self.terms[e]) for e in exps],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LambdaDSeries":
        exps = [tuple(e) for e in obj["exponents"]]
        nvars = int(obj.get("nvars", len(exps[0]) if exps else 1))
        coeffs = [_parse_int(c) for c in obj["coeffs"]]
        return cls(int(obj["ell"]), nvars, dict(zip(exps, coeffs)),
                   int(obj.get("precision", DEFAULT_PRECISION)),
                   int(obj.get("degree", DEFAULT_DEGREE)))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            c = _balanced(c, self.ell**self.precision)
            mono = "*".join(f"T{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class DistinguishedPoly:
    """Monic integer polynomial whose lower coefficients are divisible by ``ell``."""

    ell: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in poly.trim(self.coeffs))
        if not c or c[-1] != 1:
            raise NotDistinguished(f"{c} is not monic")
        if any(x % self.ell for x in c[:-1]):
            raise NotDistinguished(f"{poly.to_str(c)} has a lower coefficient prime to {self.ell}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def one(cls, ell):
        return cls(ell, (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "DistinguishedPoly") -> "DistinguishedPoly":
        if other.ell != self.ell:
            raise ValueError("mixed primes")
        return DistinguishedPoly(self.ell, tuple(poly.mul(self.coeffs, other.coeffs)))

    def as_series(self, precision=DEFAULT_PRECISION, degree=None) -> LambdaSeries:
        return LambdaSeries(self.ell, self.coeffs, precision,
                            max(self.degree, DEFAULT_DEGREE) if degree is None else degree)

    def __str__(self):
        return poly.to_str(self.coeffs)


class CharacterMap:
    """A primitive exponent vector ``c``; it induces ``T_i -> (1 + T)**c_i - 1``."""

    __slots__ = ("ell", "coords")

    def __init__(self, ell: int, coords: Sequence, precision: int = DEFAULT_PRECISION):
        pts = tuple(c if isinstance(c, PadicInt) else PadicInt(ell, precision, c) for c in coords)
        if not pts:
            raise ValueError("empty character")
        if any(c.prime != ell for c in pts):
            raise ValueError("mixed primes")
        if not any(c.is_unit() for c in pts):
            raise ValueError(f"character {[int(c) for c in pts]} is not primitive")
        self.ell = ell
        self.coords = pts

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def precision(self) -> int:
        return min(c.precision for c in self.coords)

    def scaled(self, u) -> "CharacterMap":
        u = u if isinstance(u, PadicInt) else PadicInt(self.ell, self.precision, u)
        if not u.is_unit():
            raise ValueError("scaling factor must be a unit")
        return CharacterMap(self.ell, [c * u for c in self.coords])

    def equivalent(self, other: "CharacterMap") -> bool:
        """Equal up to a global unit scalar mod l**N."""
        if other.ell != self.ell or other.d != self.d:
            return False
        n = min(self.precision, other.precision)
        m = self.ell**n
        i = next(k for k, c in enumerate(self.coords) if c.is_unit())
        if not other.coords[i].is_unit():
            return False
        u = other.coords[i].residue * pow(self.coords[i].residue, -1, m)
        return all((b.residue - u * a.residue) % m == 0 for a, b in zip(self.coords, other.coords))

    def __repr__(self):
        return f"CharacterMap({[c.residue for c in self.coords]}, ell={self.ell})"


class Preparation(NamedTuple):
    mu: int
    poly: DistinguishedPoly
    unit: LambdaSeries
    precision: int

    @property
    def lam(self) -> int:
        return self.poly.degree

    def recombine(self) -> LambdaSeries:
        """``l**mu * P * U`` at the original precision ``N = precision + mu``."""
        pu = self.poly.as_series(self.precision, self.unit.degree) * self.unit
        ell = self.unit.ell
        return LambdaSeries(ell, [c * ell**self.mu for c in pu.coeffs],
                            self.precision + self.mu, pu.degree)


class Division(NamedTuple):
    quotient: LambdaSeries
    remainder: LambdaSeries


def omega_poly(n: int, ell: int):
    """Exact integer coefficients of (1 + T)**(ell**n) - 1."""
    from math import comb

    e = ell**n
    return [0] + [comb(e, k) for k in range(1, e + 1)]


def omega(n: int, ell: int, degree: int = DEFAULT_DEGREE,
          precision: int = DEFAULT_PRECISION) -> LambdaSeries:
    if degree < 1:
        raise ValueError("degree must be >= 1")
    return LambdaSeries(ell, omega_poly(n, ell)[: degree + 1], precision, degree)


def is_distinguished(f: LambdaSeries) -> bool:
    """Monic with every lower coefficient divisible by ell, decided mod l**N.

    A lower coefficient that is zero mod l**N counts as divisible.
    """
    nz = [i for i, c in enumerate(f.coeffs) if c]
    if not nz:
        raise PrecisionExhausted("zero series: leading coefficient undetermined")
    k = nz[-1]
    lead = f.coeffs[k]
    if lead % f.ell == 0:
        raise PrecisionExhausted(
            f"leading coefficient {lead} is neither a unit nor zero mod {f.ell}^{f.precision}"
        )
    if lead != 1:
        return False
    return all(c % f.ell == 0 for c in f.coeffs[:k])


def _as_distinguished(P) -> DistinguishedPoly:
    if isinstance(P, DistinguishedPoly):
        return P
    if isinstance(P, LambdaSeries):
        if not is_distinguished(P):
            raise NotDistinguished(f"{P} is not distinguished")
        return DistinguishedPoly(P.ell, tuple(P.polynomial()))
    raise TypeError(f"cannot use {type(P).__name__} as a distinguished polynomial")


def weierstrass_divide(f: LambdaSeries, P) -> Division:
    """Weierstrass division ``f = q P + r`` with ``deg r < deg P``.

    Uses the l-adic contraction: with ``P = T**k + B``, repeatedly move the
    part of degree >= k into the quotient; each pass multiplies what is left
    above degree k by a multiple of ``l``.
    """
    P = _as_distinguished(P)
    if P.ell != f.ell:
        raise ValueError("mixed primes")
    m = f.modulus
    k = P.degree
    D = f.degree
    if k == 0:
        return Division(f, f._like([]))
    if k > D:
        return Division(f._like([]), f)
    low = [b % m for b in P.coeffs[:k]]
    cur = list(f.coeffs)
    q = [0] * (D + 1)
    for _ in range(f.precision + D + 2):
        high = cur[k:]
        if not any(high):
            break
        nxt = cur[:k] + [0] * (D + 1 - k)
        for i, h in enumerate(high):
            if h:
                q[i] += h
                for j, b in enumerate(low):
                    if b:
                        nxt[i + j] -= h * b
        cur = [c % m for c in nxt]
    else:  # pragma: no cover - contraction always terminates
        raise RuntimeError("Weierstrass division did not converge")
    return Division(f._like(q), f._like(cur))


def weierstrass_prepare(f: LambdaSeries, mu: int | None = None) -> Preparation:
    """Factor ``f = l**mu * P * U`` with ``P`` distinguished and ``U`` a unit.

    ``mu`` defaults to the minimal coefficient valuation.  The factors are
    Hensel-lifted from ``f / l**mu = T**lam * Ubar (mod l)`` one digit at a
    time; ``P`` and ``U`` are returned mod ``l**(N - mu)``.
    """
    ell = f.ell
    v = f.valuation()
    if isinstance(v, Infinite):
        raise PrecisionExhausted(f"series vanishes mod {ell}^{f.precision}")
    if mu is None:
        mu = v
    elif mu > v:
        raise ValueError(f"series is not divisible by {ell}^{mu}")
    g_series = f.shift_down(mu)
    Np = g_series.precision
    M = ell**Np
    g = list(g_series.coeffs)
    D = f.degree
    lam = next((i for i, c in enumerate(g) if c % ell), None)
    if lam is None:
        raise TruncationTooSmall(
            f"no unit coefficient of f/{ell}^{mu} up to degree {D}"
        )
    P = [0] * lam + [1]
    U = g[lam:]
    if lam:
        ubar = [c % ell for c in U[:lam]]
        inv0 = pow(ubar[0], -1, ell)
        uinv = [inv0] + [0] * (lam - 1)
        for i in range(1, lam):
            s = sum(ubar[j] * uinv[i - j] for j in range(1, i + 1) if j < len(ubar))
            uinv[i] = (-s * inv0) % ell
        pk = 1
        for _ in range(1, Np):
            pk *= ell
            PU = poly.mul(P, U)
            PU += [0] * (D + 1 - len(PU))
            E = [((gi - pui) // pk) % ell for gi, pui in zip(g, PU)]
            A = [sum(E[j] * uinv[i - j] for j in range(i + 1)) % ell for i in range(lam)]
            AU = poly.mul(A, [c % ell for c in U])
            AU += [0] * (D + 1 - len(AU))
            t = [(e - a) % ell for e, a in zip(E, AU)]
            B = t[lam:]
            for i in range(lam):
                P[i] = (P[i] + pk * A[i]) % M
            U = [(u + pk * b) % M for u, b in zip(U, B)]
    dpoly = DistinguishedPoly(ell, tuple(_balanced(c, M) for c in P[:lam]) + (1,))
    return Preparation(mu, dpoly, LambdaSeries(ell, U, Np, D), Np)


def specialize(F: LambdaDSeries, c: CharacterMap, degree: int) -> LambdaSeries:
    """Image of ``F`` under ``T_i -> (1 + T)**c_i - 1``, truncated at ``degree``."""
    if c.ell != F.ell or c.d != F.nvars:
        raise ValueError("character does not match the series")
    ell = F.ell
    n = min(F.precision, c.precision) - legendre(degree, ell)
    if n <= 0:
        raise PrecisionExhausted(
            f"degree {degree} substitution exhausts precision {min(F.precision, c.precision)}"
        )
    m = ell**n
    subs = []
    for ci in c.coords:
        s = [0] + [binomial_power(ci, k).residue for k in range(1, degree + 1)]
        subs.append(LambdaSeries(ell, s, n, degree))
    one = LambdaSeries(ell, [1], n, degree)
    powers = [[one] for _ in subs]
    out = [0] * (degree + 1)
    for exp, coeff in F.terms.items():
        term = one
        for i, e in enumerate(exp):
            while len(powers[i]) <= e:
                powers[i].append(powers[i][-1] * subs[i])
            if e:
                term = term * powers[i][e]
        for k, x in enumerate(term.coeffs):
            out[k] += coeff * x
    return LambdaSeries(ell, [x % m for x in out], n, degree)


def in_maximal_ideal(F) -> bool:
    """Membership in (T_1, ..., T_d, l): the constant term has positive valuation."""
    if isinstance(F, LambdaSeries):
        return F.coeffs[0] % F.ell == 0
    return F.constant_term().residue % F.ell == 0
