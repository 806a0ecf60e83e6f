"""Exact arithmetic for integer-valued polynomials and their truncations.

The package decides membership in the ring of polynomials taking
integer values on the integers (and its Laurent and p-local variants),
builds the recursive generator families of those rings, lifts
idempotent-style congruences, and certifies etale behaviour of the
finite truncations through Jacobian and Smith-normal-form computations.
"""

from .errors import (
    DomainError,
    FalsificationError,
    NotDivisibleError,
    NotIdempotentError,
    NumpolyError,
    ParseError,
    PrecisionError,
    ShapeError,
    UnsupportedPresentationError,
)
from .exact import (
    ExactRational,
    PadicResidue,
    format_rational,
    is_prime,
    ord_p,
    parse_rational,
    teichmuller,
)
from .expressions import parse_expression, poly_from_json
from .families import (
    AUGMENT_ADDITIVE,
    AUGMENT_MULTIPLICATIVE,
    BasisReport,
    augment,
    d_family,
    d_prime_family,
    e_family,
    plocal_basis_monomial,
    shift_auto,
    verify_plocal_basis,
)
from .hensel import (
    HenselTowerReport,
    congruence_exponent,
    frobenius_gap,
    hensel_lift,
    hensel_step,
    hensel_tower_check,
)
from .invariant import (
    AgreementReport,
    InvariantEtaleCertificate,
    ZetaAction,
    etale_over_invariants_check,
    invariant_generator_table,
    is_invariant,
    numeric_action_check,
    project_invariant,
)
from .kofunctions import (
    LocallyConstantFn,
    XiBasisReport,
    digit_function,
    ko_membership,
    verify_xi_basis,
)
from .linalg import SnfResult, det_fraction, det_int, smith_normal_form
from .membership import (
    MembershipVerdict,
    ResidueWitness,
    certify_stably_numerical,
    is_numerical,
    is_p_local_numerical,
    is_stably_numerical,
    p_divide,
)
from .polynomials import (
    BinomialPoly,
    LaurentPoly,
    binom_c,
    binom_c_monomial,
    binom_product,
    binom_structure_constant,
    to_binomial,
    to_monomial,
)
from .presentations import (
    AqModule,
    EnCertificate,
    FinitePresentation,
    KahlerVerdict,
    TowerReport,
    aq_low,
    aq_low_polynomial_over_field,
    en_presentation_check,
    idempotent_truncation,
    kahler_rank,
    truncation_tower,
)
from .quotient import InversionResult, UniQuotient, invert_in_quotient

__version__ = "0.1.0"
