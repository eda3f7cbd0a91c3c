"""Exact recovery of ``(mu, lambda, nu)`` from an exponent sequence.

The law ``e_n = mu * l**n + lambda * n + nu`` is only promised for large
``n``, so the solver anchors on the last two first differences

    Delta_n = e_(n+1) - e_n = mu * l**n * (l - 1) + lambda

and then walks backwards to find the earliest index from which the law holds
through the end of the data.  A fit needs at least three conforming
differences: two pin down ``(mu, lambda)`` and the third is the check.  That
threshold is a heuristic; more data can move the reported onset.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import NoEventualFit, NotAPowerOfEll, TooShort

MIN_TERMS = 4
MIN_CONFORMING = 3

__all__ = ["ExponentSequence", "FitResult", "fit", "fit_from_orders", "exponent_of"]


@dataclass(frozen=True)
class ExponentSequence:
    ell: int
    exponents: tuple
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if self.start < 0:
            raise ValueError("first index must be non-negative")

    @property
    def end(self) -> int:
        return self.start + len(self.exponents) - 1

    def __getitem__(self, n: int) -> int:
        return self.exponents[n - self.start]

    def __len__(self):
        return len(self.exponents)

    def shifted(self, c: int) -> "ExponentSequence":
        return replace(self, exponents=tuple(e + c for e in self.exponents))

    def rows(self):
        return [(self.start + i, e) for i, e in enumerate(self.exponents)]


@dataclass(frozen=True)
class FitResult:
    mu: int
    lam: int
    nu: int
    onset: int
    ell: int = 0
    lambda_log_correction: Optional[int] = None

    @property
    def lambda_classical(self) -> Optional[int]:
        """lambda' - lambda^[l] when the correction has been supplied."""
        if self.lambda_log_correction is None:
            return None
        return self.lam - self.lambda_log_correction

    def with_log_correction(self, k: int) -> "FitResult":
        return replace(self, lambda_log_correction=k)

    def predict(self, n: int) -> int:
        return self.mu * self.ell**n + self.lam * n + self.nu

    def to_json(self) -> dict:
        out = {"mu": self.mu, "lambda": self.lam, "nu": self.nu, "onset": self.onset}
        if self.lambda_log_correction is not None:
            out["lambda_classical"] = self.lambda_classical
        return out


def fit(seq: ExponentSequence, min_conforming: int = MIN_CONFORMING) -> FitResult:
    ell = seq.ell
    if len(seq) < MIN_TERMS:
        raise TooShort(f"need at least {MIN_TERMS} terms, got {len(seq)}")
    t = seq.end
    delta = {n: seq[n + 1] - seq[n] for n in range(seq.start, t)}
    num = delta[t - 1] - delta[t - 2]
    den = ell ** (t - 2) * (ell - 1) ** 2
    if num < 0 or num % den:
        raise NoEventualFit(
            f"tail differences {delta[t - 2]}, {delta[t - 1]} give no integer mu >= 0"
        )
    mu = num // den
    lam = delta[t - 1] - mu * ell ** (t - 1) * (ell - 1)
    if lam < 0:
        raise NoEventualFit(f"tail differences force lambda = {lam} < 0")
    n0 = t
    while n0 > seq.start and delta[n0 - 1] == mu * ell ** (n0 - 1) * (ell - 1) + lam:
        n0 -= 1
    if t - n0 < min_conforming:
        raise NoEventualFit(
            f"only {t - n0} conforming tail differences (need {min_conforming})"
        )
    nu = seq[t] - mu * ell**t - lam * t
    return FitResult(mu, lam, nu, n0, ell)


def exponent_of(order: int, ell: int) -> int:
    if order < 1:
        raise NotAPowerOfEll(f"{order} is not a positive integer")
    k = 0
    while order % ell == 0:
        order //= ell
        k += 1
    if order != 1:
        raise NotAPowerOfEll(f"order is not a power of {ell}")
    return k


def fit_from_orders(orders: Sequence[int], ell: int, start: int = 0) -> FitResult:
    return fit(ExponentSequence(ell, [exponent_of(o, ell) for o in orders], start))
