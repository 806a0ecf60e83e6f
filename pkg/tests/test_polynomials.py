from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from numpoly import (
    BinomialPoly,
    DomainError,
    LaurentPoly,
    binom_c,
    binom_c_monomial,
    binom_product,
    binom_structure_constant,
    to_binomial,
    to_monomial,
)

F = Fraction


def falling_factorial_expansion(n):
    """Independent oracle: expand w(w-1)...(w-n+1)/n! term by term."""
    poly = LaurentPoly.constant(1)
    fact = 1
    for i in range(n):
        poly = poly * LaurentPoly({1: F(1), 0: F(-i)})
        fact *= i + 1
    return poly / fact


def finite_difference_coeff(f: LaurentPoly, n: int) -> Fraction:
    """Independent oracle: n-th forward difference of f at 0."""
    total = F(0)
    sign = (-1) ** n
    binom = 1
    for i in range(n + 1):
        total += sign * binom * f.evaluate(i)
        sign = -sign
        binom = binom * (n - i) // (i + 1)
    return total


poly_strategy = st.builds(
    LaurentPoly,
    st.dictionaries(
        st.integers(min_value=0, max_value=6),
        st.fractions(min_value=-50, max_value=50, max_denominator=40),
        max_size=5,
    ),
)

binomial_strategy = st.builds(
    BinomialPoly,
    st.dictionaries(
        st.integers(min_value=0, max_value=6),
        st.fractions(min_value=-50, max_value=50, max_denominator=40),
        max_size=5,
    ),
)


# -- the binomial coefficient functions ----------------------------------------


def test_c0_is_one():
    assert binom_c_monomial(0) == LaurentPoly.constant(1)


def test_c2_matches_formula():
    assert binom_c_monomial(2) == LaurentPoly({2: F(1, 2), 1: F(-1, 2)})


def test_c3_matches_falling_factorial():
    assert binom_c_monomial(3) == falling_factorial_expansion(3)
    assert binom_c_monomial(3) == LaurentPoly(
        {3: F(1, 6), 2: F(-1, 2), 1: F(1, 3)}
    )


@pytest.mark.parametrize("n", range(8))
def test_c_n_oracle(n):
    assert binom_c_monomial(n) == falling_factorial_expansion(n)


# -- changes of basis -----------------------------------------------------------


def test_to_binomial_w_squared():
    f = LaurentPoly({2: F(1)})
    expansion = to_binomial(f)
    # oracle values: first and second forward differences at 0
    assert finite_difference_coeff(f, 1) == 1
    assert finite_difference_coeff(f, 2) == 2
    assert expansion == BinomialPoly({1: F(1), 2: F(2)})


def test_to_binomial_of_basis_vector_roundtrips():
    f = binom_c_monomial(5)
    assert to_binomial(f) == BinomialPoly.basis_vector(5)


def test_to_binomial_zero():
    assert to_binomial(LaurentPoly.zero()) == BinomialPoly.zero()


def test_to_binomial_rejects_negative_exponents():
    with pytest.raises(DomainError):
        to_binomial(LaurentPoly({-1: F(1)}))


def test_to_monomial_examples():
    assert to_monomial(BinomialPoly.basis_vector(1)) == LaurentPoly.w()
    assert to_monomial(BinomialPoly({2: F(2), 1: F(1)})) == LaurentPoly({2: F(1)})
    assert to_monomial(BinomialPoly.zero()) == LaurentPoly.zero()


@settings(max_examples=150)
@given(poly_strategy)
def test_roundtrip_monomial_side(f):
    assert to_monomial(to_binomial(f)) == f


@settings(max_examples=150)
@given(binomial_strategy)
def test_roundtrip_binomial_side(b):
    assert to_binomial(to_monomial(b)) == b


@settings(max_examples=100)
@given(poly_strategy)
def test_binomial_coeffs_are_forward_differences(f):
    expansion = to_binomial(f)
    for n in range(int(max(f.degree, 0)) + 1 if f else 0):
        assert expansion.coeff(n) == finite_difference_coeff(f, n)


# -- products --------------------------------------------------------------------


def test_product_c1_c1():
    assert binom_product(binom_c(1), binom_c(1)) == BinomialPoly(
        {2: F(2), 1: F(1)}
    )


def test_product_identity():
    b = BinomialPoly({3: F(5), 0: F(-2)})
    assert binom_product(binom_c(0), b) == b


def test_product_c2_c2():
    # oracle: multiply in the monomial basis and convert back
    oracle = to_binomial(binom_c_monomial(2) * binom_c_monomial(2))
    direct = binom_product(binom_c(2), binom_c(2))
    assert direct == oracle == BinomialPoly({4: F(6), 3: F(6), 2: F(1)})


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (4, 4), (5, 2), (0, 7)])
def test_leading_coefficient_law(m, n):
    product = binom_product(binom_c(m), binom_c(n))
    binom = 1
    for i in range(1, m + 1):
        binom = binom * (m + n - i + 1) // i
    assert product.coeff(m + n) == binom


def test_structure_constants_are_integers():
    for m in range(7):
        for n in range(7):
            for k in range(max(m, n), m + n + 1):
                s = binom_structure_constant(m, n, k)
                assert isinstance(s, int) and s > 0


@settings(max_examples=120)
@given(binomial_strategy, binomial_strategy)
def test_product_matches_monomial_oracle(a, b):
    direct = binom_product(a, b)
    oracle = to_binomial(to_monomial(a) * to_monomial(b))
    assert direct == oracle


# -- Laurent arithmetic -----------------------------------------------------------


def test_laurent_negative_powers():
    f = LaurentPoly.w(-1)
    assert (f * LaurentPoly.w()) == LaurentPoly.constant(1)
    assert f**-2 == LaurentPoly.w(2)
    assert f.evaluate(2) == F(1, 2)


def test_laurent_eval_mod_inverts_denominators():
    f = LaurentPoly({2: F(1, 3), -1: F(2)})
    # at u=2 mod 25: (1/3)*4 + 2*inverse(2) = 4*17 + 2*13 mod 25
    assert f.evaluate_mod(2, 25) == (4 * 17 + 2 * 13) % 25


def test_laurent_shift_oracle():
    f = LaurentPoly({2: F(1)})
    assert f.shift() == LaurentPoly({2: F(1), 1: F(2), 0: F(1)})
    with pytest.raises(DomainError):
        LaurentPoly.w(-1).shift()


def test_laurent_division_by_monomial_only():
    with pytest.raises(DomainError):
        LaurentPoly({1: F(1)}) / LaurentPoly({1: F(1), 0: F(1)})


def test_format_is_canonical():
    f = LaurentPoly({2: F(5, 3), 1: F(-1), 0: F(1, 2), -1: F(-2)})
    assert f.format() == "5/3*w^2 - w + 1/2 - 2*w^-1"
    assert LaurentPoly.zero().format() == "0"
