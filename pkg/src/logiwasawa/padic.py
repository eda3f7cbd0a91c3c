"""l-adic integers at a fixed absolute precision.

A :class:`PadicInt` stores a residue modulo ``prime**precision``.  Values are
immutable; every operation returns a new value whose precision is the minimum
of the operands' precisions, or lower when the operation is known to lose
digits (division by ``prime**k``, binomial coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

from .errors import NotAUnit, PrecisionExhausted

__all__ = [
    "Infinite",
    "PadicInt",
    "val",
    "unit_inverse",
    "binomial_power",
    "valuation_int",
    "legendre",
]


@total_ordering
class Infinite:
    """Valuation of a residue that vanishes at the working precision.

    It only certifies ``val >= precision``; it compares greater than every
    integer.
    """

    __slots__ = ("precision",)

    def __init__(self, precision: int):
        self.precision = precision

    def __eq__(self, other):
        return isinstance(other, Infinite)

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, Infinite)

    def __hash__(self):
        return hash("Infinite")

    def __repr__(self):
        return f"Infinite(>={self.precision}, precision-capped)"


def valuation_int(n: int, prime: int):
    """Exact l-adic valuation of a Python integer (``math.inf`` for 0)."""
    if n == 0:
        return math.inf
    n = abs(n)
    k = 0
    while n % prime == 0:
        n //= prime
        k += 1
    return k


def legendre(k: int, prime: int) -> int:
    """v_prime(k!)."""
    total = 0
    q = prime
    while q <= k:
        total += k // q
        q *= prime
    return total


@dataclass(frozen=True)
class PadicInt:
    prime: int
    precision: int
    residue: int = 0

    def __post_init__(self):
        if self.prime < 2:
            raise ValueError("prime must be >= 2")
        if self.precision < 1:
            raise PrecisionExhausted(f"precision {self.precision} < 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    @classmethod
    def of(cls, value: int, prime: int, precision: int) -> "PadicInt":
        return cls(prime, precision, value)

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.prime != self.prime:
                raise ValueError(f"mixed primes {self.prime} and {other.prime}")
            return other
        if isinstance(other, int):
            return PadicInt(self.prime, self.precision, other)
        return NotImplemented

    def _binary(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.precision, other.precision)
        return PadicInt(self.prime, n, op(self.residue, other.residue))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.prime, self.precision, -self.residue)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * unit_inverse(other)

    def __pow__(self, k: int):
        if k < 0:
            return unit_inverse(self) ** (-k)
        return PadicInt(self.prime, self.precision, pow(self.residue, k, self.modulus))

    def __eq__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.prime, self.precision, other)
        if not isinstance(other, PadicInt):
            return NotImplemented
        if other.prime != self.prime:
            return False
        n = min(self.precision, other.precision)
        return (self.residue - other.residue) % self.prime**n == 0

    def __hash__(self):
        return hash((self.prime, self.precision, self.residue))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} + O({self.prime}^{self.precision})"

    def val(self):
        return val(self)

    def is_unit(self) -> bool:
        return self.residue % self.prime != 0

    def lift(self, balanced: bool = False) -> int:
        """Integer representative; ``balanced`` picks the one of least absolute value."""
        r = self.residue
        if balanced and 2 * r > self.modulus:
            r -= self.modulus
        return r

    def reduce(self, precision: int) -> "PadicInt":
        return PadicInt(self.prime, min(precision, self.precision), self.residue)

    def shift_down(self, k: int) -> "PadicInt":
        """Exact division by ``prime**k``; the result loses ``k`` digits."""
        if k == 0:
            return self
        v = val(self)
        if not isinstance(v, Infinite) and v < k:
            raise ValueError(f"{self} is not divisible by {self.prime}^{k}")
        return PadicInt(self.prime, self.precision - k, self.residue // self.prime**k)


def val(x: PadicInt):
    """Largest ``k <= N`` with ``prime**k`` dividing the residue, or :class:`Infinite`."""
    if x.residue == 0:
        return Infinite(x.precision)
    return valuation_int(x.residue, x.prime)


def unit_inverse(x: PadicInt) -> PadicInt:
    if not x.is_unit():
        raise NotAUnit(f"{x} has positive valuation")
    return PadicInt(x.prime, x.precision, pow(x.residue, -1, x.modulus))


def binomial_power(c: PadicInt, k: int) -> PadicInt:
    """Coefficient of ``T**k`` in ``(1 + T)**c``.

    The numerator ``c (c-1) ... (c-k+1)`` is known mod ``l**N``; dividing by
    ``k!`` costs ``v_l(k!)`` digits, which the result's precision reflects.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = c.precision - legendre(k, c.prime)
    if n <= 0:
        raise PrecisionExhausted(
            f"binomial coefficient of degree {k} needs more than {c.precision} digits"
        )
    return PadicInt(c.prime, n, math.comb(c.residue, k))
