"""The root-of-unity action on Laurent polynomials and its fixed subring.

For an odd prime p, a primitive (p-1)-st root of unity acts by scaling
the variable.  Averaging over the action keeps exactly the terms whose
exponent is divisible by p-1, so the projector is implemented exactly
by exponent filtering; the p-adic average with a Teichmuller root is
kept as a numeric consistency check, since the root itself lives only
in the completed coefficient ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import PadicResidue, teichmuller
from .families import e_family
from .membership import certify_stably_numerical
from .polynomials import LaurentPoly
from .quotient import UniQuotient, poly_trim
from .presentations import FinitePresentation, kahler_rank


@dataclass(frozen=True)
class ZetaAction:
    """A chosen primitive (p-1)-st root of unity at finite precision."""

    prime: int
    precision: int
    zeta: PadicResidue

    @classmethod
    def create(cls, p: int, N: int) -> "ZetaAction":
        if p == 2:
            raise DomainError("the action is trivial at p = 2")
        return cls(p, N, teichmuller(p, N))

    def root_power(self, r: int) -> int:
        return pow(self.zeta.value, r, self.zeta.modulus)


def _require_odd_prime(p: int) -> None:
    if p == 2:
        raise DomainError("p must be an odd prime")


def project_invariant(f: LaurentPoly, p: int) -> LaurentPoly:
    """Keep the terms with exponent divisible by p - 1.

    This is the exact form of averaging over variable scalings by
    (p-1)-st roots of unity: on the slice with exponents congruent to
    j mod p-1 the average is f_j(w^(p-1)) for j = 0 and zero otherwise.
    """
    _require_odd_prime(p)
    return LaurentPoly(
        {e: c for e, c in f.terms.items() if e % (p - 1) == 0}
    )


def is_invariant(f: LaurentPoly, p: int) -> bool:
    _require_odd_prime(p)
    return all(e % (p - 1) == 0 for e in f.terms)


@dataclass(frozen=True)
class AgreementReport:
    prime: int
    precision: int
    agrees: bool
    mismatches: tuple[tuple[int, int, int], ...] = ()

    def __bool__(self):
        return self.agrees


def numeric_action_check(f: LaurentPoly, p: int, N: int) -> AgreementReport:
    """Compare the exact projector with the finite-precision average.

    The average of f(z^r w) over r = 1..p-1 multiplies the coefficient
    at exponent e by (sum of z^(re))/(p-1); termwise this must agree
    mod p^N with the exact projector.  Coefficients must be p-integral.
    """
    _require_odd_prime(p)
    action = ZetaAction.create(p, N)
    modulus = action.zeta.modulus
    inv_order = pow(p - 1, -1, modulus)
    projected = project_invariant(f, p)
    mismatches = []
    for e, c in sorted(f.terms.items()):
        if c.denominator % p == 0:
            raise DomainError(
                f"coefficient at exponent {e} is not p-integral at {p}"
            )
        c_mod = c.numerator * pow(c.denominator, -1, modulus) % modulus
        total = 0
        for r in range(1, p):
            total = (total + pow(action.root_power(r), e, modulus)) % modulus
        averaged = c_mod * total % modulus * inv_order % modulus
        expected_coeff = projected.coeff(e)
        expected = (
            expected_coeff.numerator
            * pow(expected_coeff.denominator, -1, modulus)
            % modulus
        )
        if averaged != expected:
            mismatches.append((e, averaged, expected))
    return AgreementReport(p, N, not mismatches, tuple(mismatches))


# ---------------------------------------------------------------------------
# the etale certificate for the fixed subring extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantEtaleCertificate:
    prime: int
    k: int
    relation: str
    etale: bool
    jacobian: tuple
    inverse: tuple | None

    def __bool__(self):
        return self.etale

    def to_json(self):
        return {
            "prime": self.prime,
            "k": self.k,
            "relation": self.relation,
            "etale": self.etale,
            "jacobian": [list(t) for t in self.jacobian],
            "inverse": [list(t) for t in self.inverse] if self.inverse else None,
        }


def _tv_mul(a: dict, b: dict, p: int, modulus: int) -> dict:
    """Multiply in Z/p^k[v^(+-1)][t]/(t^(p-1) - v); keys are (t_exp, v_exp)."""
    out: dict = {}
    for (t1, v1), c1 in a.items():
        for (t2, v2), c2 in b.items():
            t, v = t1 + t2, v1 + v2
            while t >= p - 1:
                t -= p - 1
                v += 1
            key = (t, v)
            out[key] = (out.get(key, 0) + c1 * c2) % modulus
    return {key: c for key, c in out.items() if c}


def etale_over_invariants_check(p: int, k: int, unit_constant: bool = True) -> InvariantEtaleCertificate:
    """Certify the degree-(p-1) radical extension of the fixed subring.

    With relation t^(p-1) - v (v an invertible graded unit) the Jacobian
    is (p-1) t^(p-2); both p-1 and t are units (t times t^(p-2) is v),
    so the explicit inverse is (p-1)^(-1) * t * v^(-1) and the product
    is verified in the reduced ring.  Dropping the unit constant leaves
    relation t^(p-1), whose Jacobian is nilpotent: the negative control.
    """
    _require_odd_prime(p)
    if k < 1:
        raise DomainError("k must be >= 1")
    modulus = p**k
    if unit_constant:
        jac = {(p - 2, 0): (p - 1) % modulus}
        inv = {(1, -1): pow(p - 1, -1, modulus)}
        product = _tv_mul(jac, inv, p, modulus)
        etale = product == {(0, 0): 1}
        return InvariantEtaleCertificate(
            p,
            k,
            "t^(p-1) - v",
            etale,
            tuple(sorted(jac.items())),
            tuple(sorted(inv.items())),
        )
    # negative control: plain t^(p-1) over Z/p^k, no unit in sight
    relation = [0] * (p - 1) + [1]
    pres = FinitePresentation.univariate(p, k, relation, gen="t")
    verdict = kahler_rank(pres)
    jacobian = poly_trim([(i * c) % modulus for i, c in enumerate(relation)][1:])
    return InvariantEtaleCertificate(
        p,
        k,
        "t^(p-1)",
        verdict.zero,
        tuple(enumerate(jacobian)),
        None,
    )


def invariant_generator_table(p: int, m_max: int) -> dict:
    """JSON-ready table of the fixed-subring generators with certificates.

    Generators are w^(p-1) (with its inverse) and the recursive family,
    which is supported on exponents divisible by p-1 by construction.
    The table also records that dividing a family member by w breaks
    invariance, a normalization pitfall worth surfacing.
    """
    _require_odd_prime(p)
    family = e_family(p, m_max)
    gens = [
        {
            "name": f"w^{p - 1}",
            "invariant": True,
            "stably_numerical": True,
            "poly": LaurentPoly.w(p - 1).to_json(),
        }
    ]
    for m, e in enumerate(family, start=1):
        gens.append(
            {
                "name": f"e_{m}",
                "degree": int(e.degree),
                "invariant": is_invariant(e, p),
                "stably_numerical": True,
                "certificate_shift": certify_stably_numerical(e, p),
                "w_inverse_variant_invariant": is_invariant(
                    e.scale_exponents(-1), p
                ),
                "poly": e.to_json(),
            }
        )
    return {"prime": p, "max_index": m_max, "generators": gens}
