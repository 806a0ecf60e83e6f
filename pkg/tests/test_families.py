import itertools
import random
from fractions import Fraction

import pytest

from numpoly import (
    AUGMENT_ADDITIVE,
    AUGMENT_MULTIPLICATIVE,
    DomainError,
    LaurentPoly,
    augment,
    binom_c,
    binom_c_monomial,
    d_family,
    d_prime_family,
    e_family,
    is_stably_numerical,
    shift_auto,
    to_binomial,
    verify_plocal_basis,
)

F = Fraction


def test_d1_at_2_is_c2():
    (d1,) = d_family(2, 1)
    assert d1 == binom_c(2)


def test_d1_at_3_is_cubic_fermat_quotient():
    d1 = d_family(3, 1)[0]
    # (w^3 - w)/3, re-expressed in the binomial basis
    from numpoly import to_monomial

    assert to_monomial(d1) == (LaurentPoly.w(3) - LaurentPoly.w()) / 3
    assert d1.degree == 3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_d_degrees_follow_power_law(p):
    for m, d in enumerate(d_family(p, 3)):
        assert d.degree == p ** (m + 1)
        assert d.min_ord_p(p) >= 0


def test_d_prime_family_stays_local():
    for dp in d_prime_family(3, 2):
        assert dp.min_ord_p(3) >= 0


def test_e1_at_3():
    assert e_family(3, 1)[0] == LaurentPoly({2: F(1, 3), 0: F(-1, 3)})


def test_e2_at_3_degree_6():
    e1, e2 = e_family(3, 2)
    assert e2 == (e1**3 - e1) / 3
    assert e2.degree == 6


def test_e1_vanishes_at_one():
    assert e_family(5, 1)[0].evaluate(1) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_e_degrees_follow_power_law(p):
    for m, e in enumerate(e_family(p, 3), start=1):
        assert e.degree == (p - 1) * p ** (m - 1)


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (5, 1)])
def test_e_family_passes_residue_sweep(p, m):
    # cross-check of the binomial certificate against the sweep route,
    # kept to depths where the sweep modulus stays small
    for e in e_family(p, m):
        assert is_stably_numerical(e, p).member


# -- augmentations -------------------------------------------------------------


def test_augmentations_on_basis_vectors():
    for n in range(6):
        c = binom_c_monomial(n)
        assert augment(c, AUGMENT_MULTIPLICATIVE) == (1 if n <= 1 else 0)
        assert augment(c, AUGMENT_ADDITIVE) == (1 if n == 0 else 0)


def test_shift_then_evaluate_at_zero():
    f = LaurentPoly({2: F(1)})
    shifted = shift_auto(f)
    assert shifted == LaurentPoly({2: F(1), 1: F(2), 0: F(1)})
    assert augment(shifted, AUGMENT_ADDITIVE) == augment(f, AUGMENT_MULTIPLICATIVE)


def test_additive_augment_rejects_laurent():
    with pytest.raises(DomainError):
        augment(LaurentPoly.w(-1), AUGMENT_ADDITIVE)
    assert augment(LaurentPoly.w(-1), AUGMENT_MULTIPLICATIVE) == 1


def test_augment_shift_identity_random():
    rng = random.Random(3)
    for _ in range(200):
        f = LaurentPoly(
            {
                e: F(rng.randint(-20, 20), rng.randint(1, 10))
                for e in range(rng.randint(0, 6))
            }
        )
        assert augment(shift_auto(f), AUGMENT_ADDITIVE) == augment(
            f, AUGMENT_MULTIPLICATIVE
        )


# -- the truncated basis matrix ---------------------------------------------------


def permutation_determinant(rows):
    """Independent oracle for small determinants."""
    n = len(rows)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = F(1)
        for i in range(n):
            term *= rows[i][perm[i]]
        total += sign * term
    return total


def test_basis_p2_degree3():
    report = verify_plocal_basis(2, 3)
    assert report.size == 4
    assert report.ord_p_det == 0 and report.unimodular
    # oracle: rebuild the 4x4 matrix rows (1, w, c_2, w*c_2) and expand
    from numpoly import plocal_basis_monomial

    rows = []
    for n in range(4):
        expansion = to_binomial(plocal_basis_monomial(2, n))
        rows.append([expansion.coeff(j) for j in range(4)])
    assert permutation_determinant(rows) == report.det


def test_basis_p3_degree2_triangular():
    report = verify_plocal_basis(3, 2)
    assert report.ord_p_det == 0
    assert report.det == 2  # 1, w, w^2 against the binomial basis


def test_basis_degree0():
    report = verify_plocal_basis(5, 0)
    assert report.det == 1 and report.unimodular


@pytest.mark.parametrize("p", [2, 3, 5])
def test_basis_unimodular_up_to_p_squared(p):
    assert verify_plocal_basis(p, p * p).unimodular
