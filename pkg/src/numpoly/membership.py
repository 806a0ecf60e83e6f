"""Decision procedures for integer-valued and stably integer-valued polynomials.

The ring of interest is the set of f in Q[w] taking integer values on
all integers (and its Laurent variant, integer values up to powers of
the argument).  Membership at a single prime is decided by a finite
residue sweep: write f = g / p^a with g having p-integral coefficients
and a minimal; then f is p-locally integer valued exactly when
g(u) = 0 mod p^a for every residue u mod p^a (unit residues only, for
the stable variant).  The sweep is sound because g(u) mod p^a only
depends on u mod p^a.

Global membership reduces to the primes dividing coefficient
denominators; at every other prime values are automatically p-integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, FalsificationError, NotDivisibleError
from .exact import int_ord_p, is_prime
from .polynomials import BinomialPoly, LaurentPoly, to_binomial


@dataclass(frozen=True)
class ResidueWitness:
    """A residue class u mod p^a where the scaled polynomial misses 0."""

    p: int
    a: int
    u: int

    def to_json(self) -> dict:
        return {"p": self.p, "a": self.a, "u": self.u}


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness: ResidueWitness | None = None
    binomial_index: int | None = None
    odd_exponent: int | None = None

    def __bool__(self) -> bool:
        return self.member

    def to_json(self) -> dict:
        out: dict = {"member": self.member}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.binomial_index is not None:
            out["binomial_index"] = self.binomial_index
        if self.odd_exponent is not None:
            out["odd_exponent"] = self.odd_exponent
        return out


def _scaling_exponent(f: LaurentPoly, p: int) -> int:
    """Smallest a >= 0 with p^a * f having p-integral coefficients."""
    v = f.min_ord_p(p)
    if v is math.inf:
        return 0
    return max(0, -v)


def _denominator_primes(f: LaurentPoly) -> list[int]:
    den = f.denominator_lcm()
    primes = []
    q = 2
    while q * q <= den:
        if den % q == 0:
            primes.append(q)
            while den % q == 0:
                den //= q
        q += 1
    if den > 1:
        primes.append(den)
    return primes


def _residue_sweep(f: LaurentPoly, p: int, units_only: bool) -> ResidueWitness | None:
    """Return a failing residue, or None when the sweep certifies membership."""
    a = _scaling_exponent(f, p)
    if a == 0:
        return None
    modulus = p**a
    g = LaurentPoly({e: c * modulus for e, c in f.terms.items()})
    for u in range(modulus):
        if units_only and u % p == 0:
            continue
        if not units_only and u == 0 and not f.is_polynomial:
            raise DomainError("negative exponents require the unit-residue sweep")
        if g.evaluate_mod(u, modulus) != 0:
            return ResidueWitness(p, a, u)
    return None


def is_p_local_numerical(f: LaurentPoly, p: int) -> MembershipVerdict:
    """Does f take p-integral values on every p-integral argument?"""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not f.is_polynomial:
        raise DomainError("p-local membership is defined for genuine polynomials")
    witness = _residue_sweep(f, p, units_only=False)
    return MembershipVerdict(witness is None, witness=witness)


def is_stably_numerical(f: LaurentPoly, p: int | None = None) -> MembershipVerdict:
    """Does f take p-integral values on p-adic units (all primes when p is None)?"""
    if p is not None:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        witness = _residue_sweep(f, p, units_only=True)
        return MembershipVerdict(witness is None, witness=witness)
    for q in _denominator_primes(f):
        verdict = is_stably_numerical(f, q)
        if not verdict.member:
            return verdict
    return MembershipVerdict(True)


def is_numerical(f: LaurentPoly) -> MembershipVerdict:
    """Does f take integer values on every integer?

    Decided by integrality of the binomial-basis coefficients, with the
    per-prime residue sweep run as an independent second route; the two
    must agree.
    """
    if not f.is_polynomial:
        raise DomainError("membership in the integer-valued ring needs a polynomial")
    expansion = to_binomial(f)
    bad_index = None
    for n, c in expansion.items():
        if c.denominator != 1:
            bad_index = n
            break
    member_basis = bad_index is None

    witness = None
    for q in _denominator_primes(f):
        witness = _residue_sweep(f, q, units_only=False)
        if witness is not None:
            break
    member_sweep = witness is None

    if member_basis != member_sweep:
        raise FalsificationError(
            "binomial-integrality and residue-sweep routes disagree on "
            f"{f.format()}"
        )
    return MembershipVerdict(member_basis, witness=witness, binomial_index=bad_index)


def p_divide(f: BinomialPoly | LaurentPoly, p: int):
    """Exact division by p inside the p-local ring the input lives in.

    Binomial form: every coefficient must have valuation >= 1.  Laurent
    form: the quotient is formed over Q and then certified by the
    unit-residue sweep; failure raises with the witnessing residue.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if isinstance(f, BinomialPoly):
        return f.p_divide(p)
    if isinstance(f, LaurentPoly):
        quotient = f / p
        verdict = is_stably_numerical(quotient, p)
        if not verdict.member:
            raise NotDivisibleError(
                f"{f.format()} is not divisible by {p} on unit residues",
                index=verdict.witness.u,
            )
        return quotient
    raise DomainError("p_divide expects a BinomialPoly or LaurentPoly")


def certify_stably_numerical(f: LaurentPoly, p: int, max_shift: int | None = None):
    """Certify membership via a w-power multiplier and binomial integrality.

    f lies in the stable p-local ring exactly when w^N * f lies in the
    p-local integer-valued ring for some N >= 0, and the latter is a
    coefficientwise check in the binomial basis.  Used where the residue
    sweep would be exponentially large (generator families with deep
    denominators).  Returns the successful shift N.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not f.terms:
        return 0

    def passes(n: int) -> bool:
        return to_binomial(f.scale_exponents(n)).min_ord_p(p) >= 0

    base = max(0, -min(f.terms))
    a = _scaling_exponent(f, p)
    # scaled by w^base the input is a polynomial; each extra power of w
    # can absorb one power of p at arguments divisible by p, so a more
    # shifts are the most a true member can need
    limit = base + a if max_shift is None else max_shift
    if not passes(limit):
        raise NotDivisibleError(
            f"no w-power multiplier up to {limit} certifies {f.format()} at {p}",
            index=limit,
        )
    # the property is monotone in the shift (w itself is a member), so
    # binary search finds the minimal certificate
    lo, hi = base, limit
    while lo < hi:
        mid = (lo + hi) // 2
        if passes(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
