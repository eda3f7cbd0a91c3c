"""Elementary Lambda-modules and their layer quotients.

An elementary module is

    E = (+)_i Lambda / l**m_i   (+)   (+)_j Lambda / P_j

with ``P_j`` distinguished.  Its invariants are ``mu = sum m_i`` and
``lambda = sum deg P_j``; the quotient ``E / omega_n E`` has order
``l**e_n`` with

    e_n = sum_i m_i * l**n + sum_j v_l(Res(P_j, omega_n)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import NamedTuple

from . import polynomials as poly
from .errors import (
    FitInconclusive,
    InfiniteQuotient,
    NoEventualFit,
    NotTorsion,
)
from .fitting import ExponentSequence, FitResult, fit
from .padic import valuation_int
from .series import (
    CharacterMap,
    DistinguishedPoly,
    LambdaDSeries,
    LambdaSeries,
    omega_poly,
    specialize,
    weierstrass_prepare,
)

__all__ = [
    "ElementaryModule",
    "StructuralInvariants",
    "ModulePresentation2",
    "SpecializedModule",
    "Growth",
    "invariants",
    "quotient_order_exponent",
    "quotient_order_exponent_linear",
    "stable_onset",
    "growth_sequence",
    "is_pseudo_null_pair",
    "specialize_module",
]


def _as_dpoly(ell, p) -> DistinguishedPoly:
    if isinstance(p, DistinguishedPoly):
        if p.ell != ell:
            raise ValueError("mixed primes")
        return p
    return DistinguishedPoly(ell, tuple(int(c) for c in p))


@dataclass(frozen=True)
class ElementaryModule:
    ell: int
    mu_parts: tuple = ()
    lambda_parts: tuple = ()

    def __post_init__(self):
        mus = tuple(int(m) for m in self.mu_parts)
        if any(m < 1 for m in mus):
            raise ValueError("mu parts must be positive")
        object.__setattr__(self, "mu_parts", mus)
        object.__setattr__(self, "lambda_parts",
                           tuple(_as_dpoly(self.ell, p) for p in self.lambda_parts))

    @classmethod
    def zero(cls, ell):
        return cls(ell)

    def __add__(self, other: "ElementaryModule") -> "ElementaryModule":
        if other.ell != self.ell:
            raise ValueError("mixed primes")
        return ElementaryModule(self.ell, self.mu_parts + other.mu_parts,
                                self.lambda_parts + other.lambda_parts)

    def divisibility_chain_ok(self) -> bool:
        """Whether P_1 | P_2 | ... | P_t (optional metadata, never enforced)."""
        for a, b in zip(self.lambda_parts, self.lambda_parts[1:]):
            if poly.divmod_monic(b.coeffs, a.coeffs)[1]:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "mu_parts": list(self.mu_parts),
            "lambda_parts": [[str(c) for c in p.coeffs] for p in self.lambda_parts],
        }

    @classmethod
    def from_json(cls, obj) -> "ElementaryModule":
        ell = int(obj["ell"])
        return cls(ell, obj.get("mu_parts", ()),
                   [[int(c) for c in p] for p in obj.get("lambda_parts", ())])


@dataclass(frozen=True)
class StructuralInvariants:
    mu: int
    lam: int
    char_poly: tuple = field(default=(0, (1,)))   # (mu, distinguished coefficients)

    def to_json(self) -> dict:
        return {"mu": self.mu, "lambda": self.lam,
                "char_poly": {"mu": self.char_poly[0], "poly": [str(c) for c in self.char_poly[1]]}}


def invariants(E: ElementaryModule) -> StructuralInvariants:
    mu = sum(E.mu_parts)
    chi = DistinguishedPoly.one(E.ell)
    for p in E.lambda_parts:
        chi = chi * p
    return StructuralInvariants(mu, chi.degree, (mu, chi.coeffs))


def _summand_exponent(p: DistinguishedPoly, n: int) -> int:
    res = poly.resultant(p.coeffs, omega_poly(n, p.ell))
    if res == 0:
        raise InfiniteQuotient(f"{p} shares a factor with omega_{n}")
    return valuation_int(res, p.ell)


def quotient_order_exponent(E: ElementaryModule, n: int) -> int:
    """``e_n`` with ``|E / omega_n E| = l**e_n``, via resultants."""
    if n < 0:
        raise ValueError("n must be non-negative")
    total = sum(m * E.ell**n for m in E.mu_parts)
    return total + sum(_summand_exponent(p, n) for p in E.lambda_parts)


def _smith_valuations(matrix, ell: int, k: int):
    """Elementary-divisor valuations of an integer matrix over Z/l**k (capped at k)."""
    mod = ell**k
    a = [[x % mod for x in row] for row in matrix]
    rows, cols = len(a), len(a[0]) if a else 0
    out = []
    for s in range(min(rows, cols)):
        best = None
        for i in range(s, rows):
            for j in range(s, cols):
                if a[i][j]:
                    v = valuation_int(a[i][j], ell)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            out.extend([k] * (min(rows, cols) - s))
            break
        v, i, j = best
        a[s], a[i] = a[i], a[s]
        for row in a:
            row[s], row[j] = row[j], row[s]
        pv = ell**v
        uinv = pow(a[s][s] // pv, -1, mod)
        for r in range(s + 1, rows):
            if a[r][s]:
                factor = (a[r][s] // pv) * uinv % mod
                a[r] = [(x - factor * y) % mod for x, y in zip(a[r], a[s])]
        out.append(v)
    return out


def _multiplication_matrix(f, modulus):
    """Matrix of ``x -> f*x`` on Z[T]/(modulus) in the monomial basis."""
    n = len(modulus) - 1
    cols = []
    for j in range(n):
        r = poly.divmod_monic(poly.mul(f, [0] * j + [1]), modulus)[1]
        cols.append(r + [0] * (n - len(r)))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def quotient_order_exponent_linear(E: ElementaryModule, n: int, max_k: int = 4096) -> int:
    """``e_n`` recomputed by row reduction on Lambda/omega_n = Z_l**(l**n).

    Each summand Lambda/(f) contributes the cokernel of multiplication by
    ``f``; the elementary divisors are computed over Z/l**k with ``k``
    doubled until every divisor is certified below ``l**k``.
    """
    ell = E.ell
    w = omega_poly(n, ell)
    gens = [[ell**m] for m in E.mu_parts] + [list(p.coeffs) for p in E.lambda_parts]
    total = 0
    for f in gens:
        mat = _multiplication_matrix(f, w)
        k = 8
        while True:
            vals = _smith_valuations(mat, ell, k)
            if all(v < k for v in vals):
                total += sum(vals)
                break
            k *= 2
            if k > max_k:
                raise InfiniteQuotient(f"{poly.to_str(f)} kills omega_{n} beyond {ell}^{max_k}")
    return total


def stable_onset(E: ElementaryModule) -> int:
    """First ``n`` from which ``e_(n+1) - e_n`` is certified to follow the law.

    A root ``a`` of ``P`` contributes ``v((1 + a)**(l**n) - 1)``; once that
    valuation exceeds ``1/(l - 1)`` it grows by exactly one per layer, and
    before that it is multiplied by ``l``.  The Newton polygon of ``P``
    gives the root valuations, hence a certified bound.
    """
    ell = E.ell
    threshold = Fraction(1, ell - 1)
    onset = 0
    for p in E.lambda_parts:
        for r, _mult in poly.root_valuations(p.coeffs, ell):
            if r == float("inf"):
                raise InfiniteQuotient(f"T divides {p}")
            steps = 0
            while r <= threshold:
                r *= ell
                steps += 1
            onset = max(onset, steps)
    return onset


class Growth(NamedTuple):
    exponents: list
    fit: FitResult
    onset_bound: int


def growth_sequence(E: ElementaryModule, n_max: int) -> Growth:
    exps = [quotient_order_exponent(E, n) for n in range(n_max + 1)]
    bound = stable_onset(E)
    # the fitter wants three conforming differences from the onset on
    if n_max < bound + 3:
        raise FitInconclusive(f"n_max = {n_max} but the law is only certified from n = {bound}")
    try:
        result = fit(ExponentSequence(E.ell, exps))
    except NoEventualFit as exc:
        raise FitInconclusive(str(exc)) from exc
    return Growth(exps, result, bound)


def is_pseudo_null_pair(f: LambdaSeries, g: LambdaSeries) -> bool:
    """Whether Lambda/(f, g) is finite."""
    pf, pg = weierstrass_prepare(f), weierstrass_prepare(g)
    if min(pf.mu, pg.mu) > 0:
        return False
    return poly.resultant(pf.poly.coeffs, pg.poly.coeffs) != 0


@dataclass(frozen=True)
class ModulePresentation2:
    """Lambda_d^k / (relations); each relation is a row of ``k`` entries of Lambda_d."""

    ell: int
    generators: int
    relations: tuple

    def __post_init__(self):
        if self.generators < 1:
            raise ValueError("need at least one generator")
        rows = []
        for rel in self.relations:
            row = (rel,) if isinstance(rel, LambdaDSeries) else tuple(rel)
            if len(row) != self.generators:
                raise ValueError(f"relation has {len(row)} entries, expected {self.generators}")
            if any(F.ell != self.ell for F in row):
                raise ValueError("mixed primes")
            rows.append(row)
        object.__setattr__(self, "relations", tuple(rows))

    @property
    def nvars(self) -> int:
        return self.relations[0][0].nvars if self.relations else 2

    @classmethod
    def cyclic(cls, *relations: LambdaDSeries) -> "ModulePresentation2":
        return cls(relations[0].ell, 1, relations)

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "generators": self.generators,
            "relations": [[F.to_json() for F in row] for row in self.relations],
        }

    @classmethod
    def from_json(cls, obj) -> "ModulePresentation2":
        k = int(obj.get("generators", 1))
        rows = []
        for rel in obj["relations"]:
            if isinstance(rel, dict):
                rel = [rel]
            rows.append(tuple(LambdaDSeries.from_json(F) for F in rel))
        return cls(int(obj["ell"]), k, tuple(rows))


class SpecializedModule(NamedTuple):
    relations: list
    invariants: StructuralInvariants


def _det(m):
    k = len(m)
    if k == 1:
        return m[0][0]
    total = None
    for perm in permutations(range(k)):
        inversions = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = m[0][perm[0]]
        for i in range(1, k):
            term = term * m[i][perm[i]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


def specialize_module(M: ModulePresentation2, c: CharacterMap, degree: int = 16) -> SpecializedModule:
    """Invariants of ``M_pi = M / ker(pi) M`` for the character ``c``.

    The characteristic ideal of the specialized module is the gcd of the
    maximal minors of its relation matrix (this is the Fitting ideal up to
    pseudo-null error).  ``mu`` is the least minor valuation and the
    distinguished part is the gcd of the minors' distinguished parts.
    """
    rows = [[specialize(F, c, degree) for F in row] for row in M.relations]
    k = M.generators
    minors = [_det([rows[i] for i in idx]) for idx in combinations(range(len(rows)), k)]
    preps = [weierstrass_prepare(m) for m in minors if not m.is_zero()]
    if not preps:
        raise NotTorsion(f"every maximal minor vanishes at {c}")
    mu = min(p.mu for p in preps)
    g = list(preps[0].poly.coeffs)
    for p in preps[1:]:
        g = poly.gcd_monic(g, p.poly.coeffs)
    gp = DistinguishedPoly(M.ell, tuple(int(x) for x in g))
    return SpecializedModule(rows, StructuralInvariants(mu, gp.degree, (mu, gp.coeffs)))
