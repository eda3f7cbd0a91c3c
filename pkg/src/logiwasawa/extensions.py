"""Finite-precision model of the space of Z_l-extensions inside a Z_l^d-extension.

A Z_l-extension inside ``K_d`` is the fixed field of the kernel of a
surjection ``Gamma_d -> Z_l``; we record the surjection by its primitive
character vector mod ``l**N`` and identify vectors that differ by a unit.
Two points share their first ``n`` layers exactly when one vector is a unit
multiple of the other mod ``l**n``, so ``intersection_level`` is the
exponent of ``[K_inf cap K'_inf : K]``.

Ramification above ``l`` is described by generator vectors of the inertia
(and log-inertia) subgroups of ``Gamma_d``: a prime ramifies in the point's
extension iff the character is nonzero on one of its generators.

Compactness of Greenberg's topology and non-compactness of the Kleine
topologies are not observable at finite precision and are not modelled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Optional, Sequence

from .errors import InvalidConfig, NotIsolated, NotTorsion, PrecisionExhausted
from .padic import valuation_int
from .series import CharacterMap
from .structure import ModulePresentation2, specialize_module

__all__ = [
    "ExtensionPoint",
    "PrimeData",
    "TowerConfig",
    "Neighborhood",
    "ScanRow",
    "ScanResult",
    "primitive_classes",
    "intersection_level",
    "greenberg_ball",
    "kleine_neighborhood",
    "neighborhood",
    "ramified_primes",
    "splits_finitely",
    "cyclotomic_isolation",
    "invariant_map",
    "TOPOLOGIES",
]

TOPOLOGIES = ("greenberg", "kleine", "logkleine")


class ExtensionPoint:
    """A primitive character vector mod ``l**N`` in canonical form.

    The canonical representative has its first unit coordinate equal to 1.
    """

    __slots__ = ("ell", "precision", "coords")

    def __init__(self, ell: int, coords: Sequence[int], precision: int):
        if precision < 1:
            raise PrecisionExhausted("extension points need precision >= 1")
        m = ell**precision
        a = [int(x) % m for x in coords]
        i = next((k for k, x in enumerate(a) if x % ell), None)
        if i is None:
            raise ValueError(f"{list(coords)} is not primitive mod {ell}")
        u = pow(a[i], -1, m)
        self.ell = ell
        self.precision = precision
        self.coords = tuple(x * u % m for x in a)

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def pivot(self) -> int:
        return next(k for k, x in enumerate(self.coords) if x % self.ell)

    def reduce(self, precision: int) -> "ExtensionPoint":
        return ExtensionPoint(self.ell, self.coords, min(precision, self.precision))

    def dot(self, g: Sequence[int]) -> int:
        return sum(a * int(b) for a, b in zip(self.coords, g)) % self.ell**self.precision

    def character(self, precision: Optional[int] = None) -> CharacterMap:
        """The character ``T_i -> (1 + T)**a_i - 1`` with the canonical integers as exact values."""
        return CharacterMap(self.ell, self.coords, precision or self.precision)

    def sort_key(self):
        return (self.pivot, self.coords)

    def __eq__(self, other):
        if not isinstance(other, ExtensionPoint):
            return NotImplemented
        return (self.ell, self.precision, self.coords) == (other.ell, other.precision, other.coords)

    def __hash__(self):
        return hash((self.ell, self.precision, self.coords))

    def label(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"

    def __repr__(self):
        return f"ExtensionPoint{self.label()} mod {self.ell}^{self.precision}"


def primitive_classes(ell: int, d: int, precision: int):
    """All canonical points mod ``l**precision``, in canonical order."""
    if precision < 1:
        return []
    m = ell**precision
    nonunits = range(0, m, ell)
    out = []
    for i in range(d):
        for head in product(nonunits, repeat=i):
            for tail in product(range(m), repeat=d - 1 - i):
                out.append(ExtensionPoint(ell, head + (1,) + tail, precision))
    return out


def intersection_level(a: ExtensionPoint, b: ExtensionPoint) -> int:
    """Largest ``n <= N`` with ``b = u * a (mod l**n)`` for a unit ``u``."""
    if (a.ell, a.d, a.precision) != (b.ell, b.d, b.precision):
        raise ValueError("points live in different spaces")
    i = a.pivot
    if b.coords[i] % a.ell == 0:
        return 0
    m = a.ell**a.precision
    u = b.coords[i] * pow(a.coords[i], -1, m) % m
    level = a.precision
    for x, y in zip(a.coords, b.coords):
        diff = (y - u * x) % m
        if diff:
            level = min(level, valuation_int(diff, a.ell))
    return level


@dataclass(frozen=True)
class PrimeData:
    label: str
    inertia: tuple = ()
    log_inertia: tuple = ()
    decomposition: Optional[tuple] = None

    @classmethod
    def from_json(cls, obj) -> "PrimeData":
        dec = obj.get("decomposition")
        return cls(
            str(obj["label"]),
            tuple(tuple(int(x) for x in g) for g in obj.get("inertia", ())),
            tuple(tuple(int(x) for x in g) for g in obj.get("log_inertia", ())),
            None if dec is None else tuple(tuple(int(x) for x in g) for g in dec),
        )

    def to_json(self) -> dict:
        out = {"label": self.label, "inertia": [list(g) for g in self.inertia],
               "log_inertia": [list(g) for g in self.log_inertia]}
        if self.decomposition is not None:
            out["decomposition"] = [list(g) for g in self.decomposition]
        return out


@dataclass(frozen=True)
class TowerConfig:
    """Synthetic ramification data above ``l`` for a fixed Z_l^d-extension.

    Only primes above ``l`` carry subgroup data; primes away from ``l`` are
    (log-)unramified in ``K_d`` once ``d >= 2`` and Gross-Kuz'min holds.
    Inertia and log-inertia generators are independent inputs.
    """

    ell: int
    d: int
    precision: int
    primes: tuple = ()
    cyclotomic_point: Optional[tuple] = None
    gross_kuzmin_assumed: bool = True

    def validate(self) -> "TowerConfig":
        if self.d < 1 or self.precision < 1:
            raise InvalidConfig("d and precision must be positive")
        m = self.ell**self.precision
        labels = [p.label for p in self.primes]
        if len(set(labels)) != len(labels):
            raise InvalidConfig("duplicate prime labels")
        for p in self.primes:
            for g in p.inertia + p.log_inertia + (p.decomposition or ()):
                if len(g) != self.d:
                    raise InvalidConfig(f"generator {list(g)} of {p.label} has wrong length")
        if self.cyclotomic_point is not None:
            if len(self.cyclotomic_point) != self.d:
                raise InvalidConfig("cyclotomic point has wrong length")
            if not any(x % self.ell for x in self.cyclotomic_point):
                raise InvalidConfig("cyclotomic point is not primitive")
        if self.gross_kuzmin_assumed and self.d >= 2:
            if not any(any(x % m for x in g) for p in self.primes for g in p.log_inertia):
                raise InvalidConfig(f"no log-ramified prime above ell = {self.ell}")
        return self

    def cyclotomic(self, precision: Optional[int] = None) -> Optional[ExtensionPoint]:
        if self.cyclotomic_point is None:
            return None
        return ExtensionPoint(self.ell, self.cyclotomic_point, precision or self.precision)

    @classmethod
    def from_json(cls, obj) -> "TowerConfig":
        cyc = obj.get("cyclotomic_point")
        return cls(
            int(obj["ell"]), int(obj["d"]), int(obj.get("precision", 8)),
            tuple(PrimeData.from_json(p) for p in obj.get("primes", ())),
            None if cyc is None else tuple(int(x) for x in cyc),
            bool(obj.get("gross_kuzmin_assumed", True)),
        )

    @classmethod
    def load(cls, path) -> "TowerConfig":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "ell": self.ell, "d": self.d, "precision": self.precision,
            "primes": [p.to_json() for p in self.primes],
            "cyclotomic_point": None if self.cyclotomic_point is None else list(self.cyclotomic_point),
            "gross_kuzmin_assumed": self.gross_kuzmin_assumed,
        }


def _nonzero_on(a: ExtensionPoint, gens, precision: int) -> bool:
    m = a.ell**precision
    return any(sum(x * y for x, y in zip(a.coords, g)) % m for g in gens)


def ramified_primes(a: ExtensionPoint, cfg: TowerConfig, logarithmic: bool = False) -> frozenset:
    """Labels of primes above ``l`` that (log-)ramify in the extension of ``a``."""
    if a.ell != cfg.ell or a.d != cfg.d:
        raise ValueError("point and config do not match")
    n = min(a.precision, cfg.precision)
    return frozenset(
        p.label for p in cfg.primes
        if _nonzero_on(a, p.log_inertia if logarithmic else p.inertia, n)
    )


def splits_finitely(a: ExtensionPoint, cfg: TowerConfig) -> Optional[bool]:
    """Whether every prime with decomposition data has open decomposition image.

    ``None`` when no prime carries decomposition data.
    """
    n = min(a.precision, cfg.precision)
    data = [p.decomposition for p in cfg.primes if p.decomposition is not None]
    if not data:
        return None
    return all(_nonzero_on(a, gens, n) for gens in data)


@dataclass(frozen=True)
class Neighborhood:
    """A Greenberg ball, optionally refined by a (log-)ramification constraint."""

    center: ExtensionPoint
    level: int
    config: Optional[TowerConfig] = None
    logarithmic: bool = False
    topology: str = field(default="greenberg")

    def __contains__(self, b: ExtensionPoint) -> bool:
        c = self.center
        if b.precision != c.precision:
            n = min(b.precision, c.precision)
            c, b = c.reduce(n), b.reduce(n)
        if intersection_level(c, b) < self.level:
            return False
        if self.config is None:
            return True
        return ramified_primes(b, self.config, self.logarithmic) <= ramified_primes(
            c, self.config, self.logarithmic)

    def enumerate(self, precision: Optional[int] = None):
        """Canonical members mod ``l**precision`` (default ``min(level + 2, N)``)."""
        if precision is None:
            precision = min(self.level + 2, self.center.precision)
        if precision < self.level:
            raise ValueError("enumeration precision below the neighborhood level")
        c = self.center.reduce(precision)
        hood = Neighborhood(c, self.level, self.config, self.logarithmic, self.topology)
        return [b for b in primitive_classes(c.ell, c.d, precision) if b in hood]


def greenberg_ball(center: ExtensionPoint, n: int) -> Neighborhood:
    if not 0 <= n <= center.precision:
        raise ValueError(f"level {n} outside [0, {center.precision}]")
    return Neighborhood(center, n)


def kleine_neighborhood(center: ExtensionPoint, n: int, cfg: TowerConfig,
                        logarithmic: bool = False) -> Neighborhood:
    if not 0 <= n <= center.precision:
        raise ValueError(f"level {n} outside [0, {center.precision}]")
    return Neighborhood(center, n, cfg, logarithmic, "logkleine" if logarithmic else "kleine")


def neighborhood(center: ExtensionPoint, n: int, topology: str = "greenberg",
                 cfg: Optional[TowerConfig] = None) -> Neighborhood:
    if topology == "greenberg":
        return greenberg_ball(center, n)
    if topology not in TOPOLOGIES:
        raise ValueError(f"unknown topology {topology!r}")
    if cfg is None:
        raise ValueError(f"{topology} topology needs a tower config")
    return kleine_neighborhood(center, n, cfg, logarithmic=topology == "logkleine")


def cyclotomic_isolation(cfg: TowerConfig, n_max: int) -> int:
    """Smallest ``n >= 1`` at which the log-Kleine neighborhood of the cyclotomic point is a singleton.

    Points are enumerated mod ``l**n_max``; levels ``n < n_max`` are searched,
    since every level-``n_max`` ball is trivially a singleton at that precision.
    """
    if cfg.cyclotomic_point is None:
        raise ValueError("config has no cyclotomic point")
    if n_max < 2:
        raise NotIsolated(n_max)
    cyc = cfg.cyclotomic(n_max)
    if ramified_primes(cyc, cfg, logarithmic=True):
        raise ValueError("the cyclotomic point must be logarithmically unramified")
    classes = primitive_classes(cfg.ell, cfg.d, n_max)
    for n in range(1, n_max):
        hood = kleine_neighborhood(cyc, n, cfg, logarithmic=True)
        if [b for b in classes if b in hood] == [cyc]:
            return n
    raise NotIsolated(n_max)


class ScanRow(NamedTuple):
    point: ExtensionPoint
    mu: Optional[int]
    lam: Optional[int]
    status: str


@dataclass
class ScanResult:
    rows: list

    @property
    def torsion_rows(self):
        return [r for r in self.rows if r.status == "ok"]

    @property
    def max_mu(self) -> Optional[int]:
        return max((r.mu for r in self.torsion_rows), default=None)

    @property
    def max_lambda(self) -> Optional[int]:
        return max((r.lam for r in self.torsion_rows), default=None)

    def to_csv(self) -> str:
        lines = ["point;mu;lambda;status"]
        for r in self.rows:
            mu = "" if r.mu is None else str(r.mu)
            lam = "" if r.lam is None else str(r.lam)
            lines.append(f"{r.point.label()};{mu};{lam};{r.status}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        bad = len(self.rows) - len(self.torsion_rows)
        return (f"max mu = {self.max_mu}, max lambda = {self.max_lambda} "
                f"over {len(self.rows)} points ({bad} not torsion)")


def invariant_map(M: ModulePresentation2, center: ExtensionPoint, n: int,
                  sample_precision: int, cfg: Optional[TowerConfig] = None,
                  topology: str = "greenberg", working_precision: int = 32,
                  degree: Optional[int] = None,
                  finite_splitting_only: bool = False) -> ScanResult:
    """Invariants of ``M_pi`` at every sampled point of a neighborhood of ``center``.

    Each canonical point mod ``l**sample_precision`` is read as the exact
    integer character it represents and specialized at ``working_precision``
    and T-degree ``degree`` (default ``l**sample_precision``).
    """
    if M.nvars != center.d:
        raise ValueError("presentation and points have different dimension")
    if not n <= sample_precision <= center.precision:
        raise ValueError("need level <= sample precision <= point precision")
    degree = degree or center.ell**sample_precision
    hood = neighborhood(center, n, topology, cfg)
    rows = []
    for b in hood.enumerate(sample_precision):
        if finite_splitting_only and cfg is not None and splits_finitely(b, cfg) is False:
            continue
        try:
            inv = specialize_module(M, b.character(working_precision), degree).invariants
        except NotTorsion:
            rows.append(ScanRow(b, None, None, "NotTorsion"))
        except PrecisionExhausted:
            rows.append(ScanRow(b, None, None, "PrecisionExhausted"))
        else:
            rows.append(ScanRow(b, inv.mu, inv.lam, "ok"))
    rows.sort(key=lambda r: r.point.sort_key())
    return ScanResult(rows)
