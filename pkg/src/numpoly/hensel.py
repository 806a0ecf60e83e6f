"""Idempotent-style Hensel lifting in the binomial basis.

If s^p = s mod p^n then s' = s + (s^p - s) satisfies the same congruence
mod p^(n+1); iterating from a seed that works mod p reaches any target
precision.  Congruences here are congruences of integer-valued
polynomials: all binomial-basis coefficients divisible by the power
of p, or equivalently all values on a full residue system divisible by
it.  The second reading gives a verification route whose cost does not
grow with the degree of the iterate, which matters because the iterates
of the seed at index p^m have degree p^(m+j) after j steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotIdempotentError
from .exact import is_prime
from .polynomials import BinomialPoly


def frobenius_gap(s: BinomialPoly, p: int) -> BinomialPoly:
    """s^p - s, the defect of s from being idempotent under x -> x^p."""
    return s**p - s


def congruence_exponent(s: BinomialPoly, p: int, cap: int = 64) -> int:
    """Largest e <= cap with s^p = s mod p^e, from coefficient valuations."""
    v = frobenius_gap(s, p).min_ord_p(p)
    return cap if v is math.inf else min(cap, int(v))


def hensel_step(s: BinomialPoly, p: int, n: int) -> BinomialPoly:
    """One lifting step; requires s^p = s mod p^n, returns s + (s^p - s)."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 1:
        raise DomainError("congruence exponent must be >= 1")
    gap = frobenius_gap(s, p)
    for idx, c in gap.items():
        if c.denominator != 1 or c.numerator % p**n:
            raise NotIdempotentError(
                f"coefficient at index {idx} is not divisible by {p}^{n}",
                index=idx,
            )
    return s + gap


def hensel_lift(s0: BinomialPoly, p: int, target_k: int) -> BinomialPoly:
    """Iterate the lifting step from exponent 1 up to the target one."""
    if target_k < 1:
        raise DomainError("target exponent must be >= 1")
    s = s0
    for n in range(1, target_k):
        s = hensel_step(s, p, n)
    # final congruence check at the target
    gap = frobenius_gap(s, p)
    for idx, c in gap.items():
        if c.denominator != 1 or c.numerator % p**target_k:
            raise NotIdempotentError(
                f"lift failed: index {idx} not divisible by {p}^{target_k}",
                index=idx,
            )
    return s


# ---------------------------------------------------------------------------
# value-based verification of whole towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HenselStepReport:
    step: int
    exponent: int


@dataclass(frozen=True)
class HenselTowerReport:
    p: int
    m: int
    target_k: int
    steps: tuple[HenselStepReport, ...]
    ok: bool

    def to_json(self):
        return {
            "p": self.p,
            "m": self.m,
            "target_k": self.target_k,
            "steps": [{"step": s.step, "exponent": s.exponent} for s in self.steps],
            "ok": self.ok,
        }


def _seed_values_mod(p: int, m: int, count: int, modulus: int) -> list[int]:
    """Values mod ``modulus`` of the basis vector at index p^m on 0..count-1.

    The exact running value C(u, n) = C(u-1, n) * u / (u - n) is carried
    along because the update division is only exact on true values.
    """
    n = p**m
    out = []
    value = 0
    for u in range(count):
        if u == n:
            value = 1
        elif u > n:
            value = value * u // (u - n)
        out.append(value % modulus)
    return out


def _min_value_ord(high: list[int], low: list[int], count: int, p: int, cap: int) -> int:
    exponent = cap
    for u in range(count):
        d = high[u] - low[u]
        if d:
            e = 0
            while d % p == 0 and e < cap:
                d //= p
                e += 1
            if e < exponent:
                exponent = e
                if exponent == 0:
                    break
    return exponent


def value_congruence_exponent(p: int, m: int, power: int, cap: int) -> int:
    """Largest e <= cap with s^p = s mod p^e for s the p^power-th power of
    the seed at index p^m, measured on values.

    Divisibility of all binomial coefficients by p^e is equivalent to
    divisibility of the values at 0..deg by p^e: coefficients are integer
    combinations of those values (forward differences) and values are
    integer combinations of coefficients, so the two minimum valuations
    agree.  The defect s^p - s has degree p^(m + power + 1).
    """
    modulus = p**cap
    degree = p ** (m + power + 1)
    seeds = _seed_values_mod(p, m, degree + 1, modulus)
    low = [pow(x, p**power, modulus) for x in seeds]
    high = [pow(x, p, modulus) for x in low]
    return _min_value_ord(high, low, degree + 1, p, cap)


def hensel_tower_check(p: int, m: int, target_k: int) -> HenselTowerReport:
    """Verify the whole lifting tower from the seed at index p^m.

    After j steps the iterate equals the p^j-th power of the seed, so
    iterate values are p^j-th powers of seed values, updated in place by
    one more p-th powering per step; the report records the congruence
    exponent of every iterate (capped at target_k + 1), which must reach
    j + 1 at step j and grow by at least one per step.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if m < 0 or target_k < 1:
        raise DomainError("m must be >= 0 and target_k >= 1")
    cap = target_k + 1
    modulus = p**cap
    max_degree = p ** (m + target_k)
    current = _seed_values_mod(p, m, max_degree + 1, modulus)
    steps = []
    ok = True
    previous = None
    for j in range(target_k):
        nxt = [pow(x, p, modulus) for x in current]
        degree = p ** (m + j + 1)
        e = _min_value_ord(nxt, current, degree + 1, p, cap)
        if e < j + 1:
            ok = False
        if previous is not None and e < min(cap, previous + 1):
            ok = False
        steps.append(HenselStepReport(j, e))
        previous = e
        current = nxt
    return HenselTowerReport(p, m, target_k, tuple(steps), ok)
