"""Single-generator quotients of Z/p^k[x] and unit inversion inside them.

Z/p^k is not a field, so inverses cannot come from one extended gcd.
But its units are exactly the elements that are units mod p, so the
strategy is: decide unit-ness and find a first inverse in F_p[x] via
the extended gcd against the relation, then Newton-lift h -> h(2 - gh),
doubling the precision until p^k is reached.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, UnsupportedPresentationError
from .polynomials import LaurentPoly

# -- dense univariate helpers over Z/m (ascending coefficient lists) --------


def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, m):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return poly_trim(out)


def poly_scale(a, s, m):
    return poly_trim([c * s % m for c in a])


def poly_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % m
    return poly_trim(out)


def poly_divmod_fp(a, b, p):
    """Division with remainder in F_p[x]; b must be nonzero."""
    a = [c % p for c in a]
    b = poly_trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(poly_trim(r)) >= len(b):
        r = poly_trim(r)
        shift = len(r) - len(b)
        factor = r[-1] * inv_lead % p
        q[shift] = factor
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - factor * c) % p
    return poly_trim(q), poly_trim(r)


def poly_ext_gcd_fp(a, b, p):
    """(g, s, t) with s*a + t*b = g in F_p[x], g monic when nonzero."""
    r0, r1 = poly_trim([c % p for c in a]), poly_trim([c % p for c in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod_fp(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_add(s0, poly_scale(poly_mul(q, s1, p), -1, p), p)
        t0, t1 = t1, poly_add(t0, poly_scale(poly_mul(q, t1, p), -1, p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = poly_scale(r0, inv, p)
        s0 = poly_scale(s0, inv, p)
        t0 = poly_scale(t0, inv, p)
    return r0, s0, t0


@dataclass(frozen=True)
class InversionResult:
    """Outcome of inverting an element of Z/p^k[x]/(relation)."""

    is_unit: bool
    inverse: tuple[int, ...] | None = None
    gcd_certificate: tuple[int, ...] | None = None

    def __bool__(self):
        return self.is_unit


class UniQuotient:
    """Z/p^k[x]/(f) with f made monic by a unit normalization.

    Elements are coefficient lists of length < deg f, reduced mod p^k.
    """

    def __init__(self, p: int, k: int, relation: list[int]):
        if k < 1:
            raise DomainError("precision k must be >= 1")
        self.p = p
        self.k = k
        self.modulus = p**k
        rel = poly_trim([c % self.modulus for c in relation])
        if len(rel) < 2:
            raise UnsupportedPresentationError(
                "relation must have positive degree in the generator"
            )
        if rel[-1] % p == 0:
            raise UnsupportedPresentationError(
                "leading coefficient of the relation is not a unit"
            )
        lead_inv = pow(rel[-1], -1, self.modulus)
        self.relation = [c * lead_inv % self.modulus for c in rel]
        self.degree = len(self.relation) - 1
        # rewrite: x^degree = -(lower part)
        self.rewrite = [(-c) % self.modulus for c in self.relation[:-1]]

    def reduce(self, coeffs: list[int]) -> list[int]:
        a = [c % self.modulus for c in coeffs]
        d = self.degree
        while len(a) > d:
            top = a.pop()
            if top:
                shift = len(a) - d
                for i, c in enumerate(self.rewrite):
                    a[shift + i] = (a[shift + i] + top * c) % self.modulus
        return a + [0] * (d - len(a))

    def from_terms(self, terms) -> list[int]:
        if isinstance(terms, int):
            terms = {0: terms}
        if isinstance(terms, LaurentPoly):
            if not terms.is_polynomial:
                raise DomainError("quotient elements cannot carry negative exponents")
            converted = {}
            for e, c in terms.terms.items():
                if c.denominator % self.p == 0:
                    raise DomainError("coefficient denominator is divisible by p")
                converted[e] = c.numerator * pow(c.denominator, -1, self.modulus)
            terms = converted
        if isinstance(terms, dict):
            top = max(terms, default=0)
            coeffs = [0] * (top + 1)
            for e, c in terms.items():
                if e < 0:
                    raise DomainError("quotient elements cannot carry negative exponents")
                coeffs[e] = int(c)
            terms = coeffs
        return self.reduce(list(terms))

    def one(self) -> list[int]:
        return [1] + [0] * (self.degree - 1)

    def mul(self, a, b) -> list[int]:
        return self.reduce(poly_mul(a, b, self.modulus))

    def add(self, a, b) -> list[int]:
        return self.reduce(poly_add(a, b, self.modulus))

    def derivative_of_relation(self) -> list[int]:
        return self.reduce(
            [i * c % self.modulus for i, c in enumerate(self.relation)][1:]
        )

    def mult_matrix(self, a) -> list[list[int]]:
        """Matrix of multiplication by a on the monomial basis (columns)."""
        current = self.reduce(list(a))
        cols = []
        for j in range(self.degree):
            if j:
                current = self.reduce([0] + current)
            cols.append(list(current))
        # transpose into row-major form
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def invert(self, a) -> InversionResult:
        a = self.reduce(list(a))
        p = self.p
        g, s, _ = poly_ext_gcd_fp(a, self.relation, p)
        if len(g) != 1:
            return InversionResult(False, gcd_certificate=tuple(g))
        # s * a = 1 mod (p, relation); lift by Newton doubling
        h = self.reduce(poly_scale(s, pow(g[0], -1, p), p))
        precision = 1
        while precision < self.k:
            gh = self.mul(a, h)
            two_minus = [(-c) % self.modulus for c in gh]
            two_minus[0] = (two_minus[0] + 2) % self.modulus
            h = self.mul(h, two_minus)
            precision *= 2
        if self.mul(a, h) != self.one():
            raise AssertionError("Newton lifting failed to reach an inverse")
        return InversionResult(True, inverse=tuple(h))


def invert_in_quotient(element, presentation) -> InversionResult:
    """Invert inside a single-generator quotient given by a presentation.

    ``presentation`` must expose p, k, gens, relation_coeff_lists() and
    unit_v (see FinitePresentation); only one generator and no adjoined
    graded unit are supported here.  The non-unit verdict carries the
    nontrivial gcd with the relation mod p as its certificate.
    """
    if getattr(presentation, "unit_v", False):
        raise UnsupportedPresentationError(
            "inversion with an adjoined graded unit has dedicated routines"
        )
    if len(presentation.gens) != 1:
        raise UnsupportedPresentationError("inversion needs a single generator")
    rel = presentation.relation_coeff_lists()[0]
    ring = UniQuotient(presentation.p, presentation.k, rel)
    return ring.invert(ring.from_terms(element))
