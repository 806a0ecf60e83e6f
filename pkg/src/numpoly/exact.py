"""Exact scalar arithmetic: rationals, p-adic valuations, residues mod p^N.

Rational numbers are plain :class:`fractions.Fraction` values; they are
already stored in lowest terms with a positive denominator and all
arithmetic on them is exact.  This module adds the p-adic layer: the
valuation ``ord_p``, fixed-precision residues, and Teichmuller
representatives of roots of unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError, PrecisionError

#: Alias documenting that rationals in this package are stdlib Fractions.
ExactRational = Fraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit integer."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def int_ord_p(n: int, p: int) -> int:
    """Valuation of a nonzero integer; caller guarantees n != 0."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ord_p(q: Fraction | int, p: int) -> int | float:
    """p-adic valuation of a rational; ``math.inf`` exactly for zero."""
    _require_prime(p)
    q = Fraction(q)
    if q == 0:
        return math.inf
    return int_ord_p(q.numerator, p) - int_ord_p(q.denominator, p)


def format_rational(q: Fraction | int) -> str:
    """Serialize as "num/den", denominator always present and positive."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def smallest_primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod an odd prime."""
    _require_prime(p)
    if p == 2:
        return 1
    factors = set()
    m = p - 1
    f = 2
    while f * f <= m:
        if m % f == 0:
            factors.add(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root found, p is not prime")


@dataclass(frozen=True)
class PadicResidue:
    """A residue in Z/p^N together with its ambient precision.

    Arithmetic stays inside the fixed modulus p^N; a residue is a unit
    exactly when its value is not divisible by p.
    """

    p: int
    N: int
    value: int

    def __post_init__(self):
        _require_prime(self.p)
        if self.N < 1:
            raise DomainError("precision must be >= 1")
        object.__setattr__(self, "value", self.value % self.p**self.N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _coerce(self, other) -> "PadicResidue":
        if isinstance(other, int):
            return PadicResidue(self.p, self.N, other)
        if isinstance(other, PadicResidue):
            if (other.p, other.N) != (self.p, self.N):
                raise DomainError("mixed moduli in residue arithmetic")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PadicResidue(self.p, self.N, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PadicResidue(self.p, self.N, self.value - other.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PadicResidue(self.p, self.N, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicResidue(self.p, self.N, -self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PadicResidue(self.p, self.N, pow(self.value, e, self.modulus))

    @property
    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> "PadicResidue":
        if not self.is_unit:
            raise DomainError(f"{self.value} is not a unit mod {self.p}^{self.N}")
        return PadicResidue(self.p, self.N, pow(self.value, -1, self.modulus))

    def reduce(self, N: int) -> "PadicResidue":
        """Image under the projection to the smaller precision N."""
        if N > self.N:
            raise PrecisionError(f"cannot raise precision {self.N} -> {N}")
        return PadicResidue(self.p, N, self.value)

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.N, "value": self.value}

    @classmethod
    def from_json(cls, data: dict) -> "PadicResidue":
        return cls(data["p"], data["N"], data["value"])


def teichmuller(p: int, N: int) -> PadicResidue:
    """The distinguished (p-1)-st root of unity mod p^N.

    Lifts the smallest primitive root mod p by iterating the p-power map
    until it stabilizes.  For p = 2 the only root is 1.
    """
    _require_prime(p)
    if N < 1:
        raise DomainError("precision must be >= 1")
    if p == 2:
        return PadicResidue(2, N, 1)
    mod = p**N
    z = smallest_primitive_root(p)
    for _ in range(N):
        z = pow(z, p, mod)
    assert pow(z, p - 1, mod) == 1
    return PadicResidue(p, N, z)
