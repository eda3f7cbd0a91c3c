"""Logarithmic ramification index and inertia degree of local extension steps.

The intersection degree ``c`` of ``L_P`` with the composite of all cyclotomic
Z_q-extensions of ``K_p`` is an input: computing it needs local class field
theory.  Everything here is a consistency calculus on supplied degrees:

    f_log = c,   e_log = degree / c,   e_log * f_log = e * f = degree,

together with multiplicativity in towers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, NamedTuple

from .errors import InconsistentStep, TowerMismatch

__all__ = [
    "LocalStep",
    "LogIndices",
    "log_indices",
    "compose",
    "composite_step",
    "validate_away_from_ell",
    "log_unramified_implies_unramified",
    "load_tower",
]


def _is_power(n: int, ell: int) -> bool:
    while n % ell == 0:
        n //= ell
    return n == 1


@dataclass(frozen=True)
class LocalStep:
    p: int
    ell: int
    degree: int
    e: int
    f: int
    c: int
    galois_ell: bool = True

    def problems(self) -> list:
        out = []
        if min(self.degree, self.e, self.f, self.c) < 1:
            out.append("degrees must be positive")
            return out
        if self.e * self.f != self.degree:
            out.append(f"e*f = {self.e * self.f} != degree {self.degree}")
        if self.degree % self.c:
            out.append(f"c = {self.c} does not divide degree {self.degree}")
        if self.galois_ell and not all(_is_power(x, self.ell) for x in (self.degree, self.e, self.f)):
            out.append(f"degree, e, f of a Galois {self.ell}-extension must be {self.ell}-powers")
        return out

    def check(self) -> "LocalStep":
        issues = self.problems()
        if issues:
            raise InconsistentStep("; ".join(issues))
        return self

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj) -> "LocalStep":
        return cls(int(obj["p"]), int(obj["ell"]), int(obj["degree"]), int(obj["e"]),
                   int(obj["f"]), int(obj["c"]), bool(obj.get("galois_ell", True)))


class LogIndices(NamedTuple):
    e_log: int
    f_log: int


def log_indices(step: LocalStep) -> LogIndices:
    if step.c < 1 or step.degree % step.c:
        raise InconsistentStep(f"c = {step.c} does not divide degree {step.degree}")
    return LogIndices(step.degree // step.c, step.c)


def composite_step(lower: LocalStep, upper: LocalStep) -> LocalStep:
    """The step from the bottom of ``lower`` to the top of ``upper``."""
    if (lower.p, lower.ell) != (upper.p, upper.ell):
        raise TowerMismatch(f"steps over p={lower.p} and p={upper.p} do not stack")
    return LocalStep(lower.p, lower.ell, lower.degree * upper.degree, lower.e * upper.e,
                     lower.f * upper.f, lower.c * upper.c,
                     lower.galois_ell and upper.galois_ell)


def compose(lower, upper, composite: LocalStep | None = None,
            check_ell_powers: bool = True) -> LogIndices:
    """Tower law for ``(step, indices)`` pairs.

    ``lower`` and ``upper`` are ``(LocalStep, LogIndices)`` pairs, or bare
    steps.  When ``composite`` is given its own indices must equal the
    products.  ``check_ell_powers=False`` accepts non-l steps without the
    l-power checks.
    """
    (ls, li), (us, ui) = (_pair(lower), _pair(upper))
    if (ls.p, ls.ell) != (us.p, us.ell):
        raise TowerMismatch(f"steps over p={ls.p} and p={us.p} do not stack")
    for s, idx in ((ls, li), (us, ui)):
        if idx.e_log * idx.f_log != s.degree:
            raise TowerMismatch(f"indices {tuple(idx)} do not factor degree {s.degree}")
        if check_ell_powers and s.galois_ell and not _is_power(s.degree, s.ell):
            raise TowerMismatch(f"degree {s.degree} is not a power of {s.ell}")
    total = LogIndices(li.e_log * ui.e_log, li.f_log * ui.f_log)
    if composite is not None:
        if composite.degree != ls.degree * us.degree:
            raise TowerMismatch("composite degree is not the product of the step degrees")
        if log_indices(composite) != total:
            raise TowerMismatch(
                f"composite indices {tuple(log_indices(composite))} != products {tuple(total)}"
            )
    return total


def _pair(x):
    if isinstance(x, LocalStep):
        return x, log_indices(x)
    step, idx = x
    return step, LogIndices(*idx)


def validate_away_from_ell(step: LocalStep) -> list:
    """Violations of ``e_log = e`` and ``f_log = f`` at a prime ``p != l``.

    Both indices are l-powers, so their q-parts agree for every ``q != p``;
    for ``p != l`` that forces equality.  Returns an empty list when ``p = l``.
    """
    if not step.galois_ell:
        raise ValueError("only Galois l-extension steps are constrained")
    if step.p == step.ell:
        return []
    e_log, f_log = log_indices(step)
    out = []
    if e_log != step.e:
        out.append(f"p={step.p}: logarithmic index {e_log} != ramification index {step.e}")
    if f_log != step.f:
        out.append(f"p={step.p}: logarithmic inertia degree {f_log} != inertia degree {step.f}")
    return out


def log_unramified_implies_unramified(tower: Iterable[LocalStep]) -> bool:
    """Linter: in a logarithmically unramified l-tower every step away from l is unramified."""
    for step in tower:
        if not step.galois_ell or log_indices(step).e_log != 1:
            raise ValueError("every step must be a logarithmically unramified Galois l-step")
        if step.p != step.ell and step.e != 1:
            return False
    return True


def load_tower(path) -> list:
    with open(path) as fh:
        return [LocalStep.from_json(obj) for obj in json.load(fh)]
