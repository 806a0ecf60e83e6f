"""Recursive generator families and the truncated p-local basis check.

The p-local integer-valued ring is generated by the binomial basis
vectors at indices 1, p, p^2, ... and each generator satisfies a
congruence of Fermat type: its p-th power differs from it by p times a
new integer-valued element.  Dividing out that p yields the d-family.
On the Laurent side the same recursion starting from (w^(p-1) - 1)/p
yields the e-family of stably integer-valued generators.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, FalsificationError
from .exact import ord_p
from .membership import certify_stably_numerical, p_divide
from .polynomials import (
    BinomialPoly,
    LaurentPoly,
    binom_c,
    binom_c_monomial,
    to_binomial,
)
from . import linalg


@functools.lru_cache(maxsize=None)
def _d_family_tuple(p: int, m_max: int) -> tuple[BinomialPoly, ...]:
    out = []
    for m in range(m_max):
        c = binom_c(p**m)
        d = p_divide(c**p - c, p)
        if d.degree != p ** (m + 1):
            raise FalsificationError(
                f"degree of d_{m + 1} at p={p} is {d.degree}, expected {p ** (m + 1)}"
            )
        if d.min_ord_p(p) < 0:
            raise FalsificationError(f"d_{m + 1} at p={p} left the p-local ring")
        out.append(d)
    return tuple(out)


def d_family(p: int, m_max: int) -> list[BinomialPoly]:
    """[d_1, ..., d_{m_max}] with d_{m+1} = (c^p - c)/p for c at index p^m.

    Every element is certified p-locally integer valued (all binomial
    coefficients p-integral) and of degree exactly p^(m+1).
    """
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    return list(_d_family_tuple(p, m_max))


def d_prime_family(p: int, m_max: int) -> list[BinomialPoly]:
    """The same Fermat-quotient recursion applied to the d-family itself."""
    out = []
    for d in d_family(p, m_max):
        out.append(p_divide(d**p - d, p))
    return out


@functools.lru_cache(maxsize=None)
def _e_family_tuple(p: int, m_max: int) -> tuple[LaurentPoly, ...]:
    out = []
    e = LaurentPoly({p - 1: Fraction(1), 0: Fraction(-1)}) / p
    for m in range(1, m_max + 1):
        if m > 1:
            e = (e**p - e) / p
        expected = (p - 1) * p ** (m - 1)
        if e.degree != expected:
            raise FalsificationError(
                f"degree of e_{m} at p={p} is {e.degree}, expected {expected}"
            )
        # certificate: some w-power multiple is integer valued, checked
        # coefficientwise in the binomial basis (the residue sweep is
        # exponential in the denominator depth and unusable here)
        shift = certify_stably_numerical(e, p)
        expected_shift = (p**m - 1) // (p - 1)
        if shift > expected_shift:
            raise FalsificationError(
                f"e_{m} at p={p} needed multiplier {shift} > {expected_shift}"
            )
        out.append(e)
    return tuple(out)


def e_family(p: int, m_max: int) -> list[LaurentPoly]:
    """[e_1, ..., e_{m_max}]: e_1 = (w^(p-1) - 1)/p, then the same recursion.

    Each element is certified stably integer valued at p, with degree
    exactly (p-1) * p^(m-1).
    """
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    return list(_e_family_tuple(p, m_max))


# ---------------------------------------------------------------------------
# augmentations and the shift automorphism
# ---------------------------------------------------------------------------

AUGMENT_ADDITIVE = "plus"
AUGMENT_MULTIPLICATIVE = "times"


def augment(f: LaurentPoly, which: str) -> Fraction:
    """Evaluation at 0 (additive) or 1 (multiplicative).

    The additive augmentation rejects negative exponents: 0 is not a
    unit of the argument domain.
    """
    if which == AUGMENT_ADDITIVE:
        if not f.is_polynomial:
            raise DomainError("additive augmentation undefined on negative exponents")
        return f.evaluate(0)
    if which == AUGMENT_MULTIPLICATIVE:
        return f.evaluate(1)
    raise DomainError(f"unknown augmentation {which!r}")


def shift_auto(f: LaurentPoly) -> LaurentPoly:
    """The ring automorphism substituting w + 1 for w."""
    return f.shift()


# ---------------------------------------------------------------------------
# truncated verification of the p-local monomial basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisReport:
    prime: int
    degree_bound: int
    size: int
    det: Fraction
    ord_p_det: int

    @property
    def unimodular(self) -> bool:
        return self.ord_p_det == 0

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "degree_bound": self.degree_bound,
            "size": self.size,
            "det": f"{self.det.numerator}/{self.det.denominator}",
            "ord_p_det": self.ord_p_det,
            "unimodular": self.unimodular,
        }


def plocal_basis_monomial(p: int, n: int) -> LaurentPoly:
    """The degree-n monomial in w and the basis vectors at p-power indices.

    Writing n in base p as sum r_k p^k with digits r_k < p gives the
    unique product w^(r_0) * c_p^(r_1) * c_(p^2)^(r_2) * ... of degree n.
    """
    out = LaurentPoly.constant(1)
    k = 0
    while n:
        r = n % p
        n //= p
        if r:
            out = out * binom_c_monomial(p**k) ** r
        k += 1
    return out


def verify_plocal_basis(p: int, degree_bound: int) -> BasisReport:
    """Change-of-basis determinant between the p-power monomials and the
    binomial basis, truncated at the degree bound.

    The monomial family restricted to degree <= bound is in bijection
    with the degrees 0..bound, so the matrix is square by construction;
    the truncated basis claim holds exactly when the determinant has
    p-adic valuation 0.
    """
    if degree_bound < 0:
        raise DomainError("degree bound must be >= 0")
    size = degree_bound + 1
    rows = []
    for n in range(size):
        expansion = to_binomial(plocal_basis_monomial(p, n))
        if expansion.degree != n:
            raise FalsificationError(
                f"monomial enumeration is not graded at degree {n}"
            )
        rows.append([expansion.coeff(j) for j in range(size)])
    det = linalg.det_fraction(rows)
    if det == 0:
        raise FalsificationError(
            f"singular change of basis at p={p}, bound={degree_bound}"
        )
    return BasisReport(p, degree_bound, size, det, int(ord_p(det, p)))
