import random
from fractions import Fraction

import pytest

from numpoly import (
    BinomialPoly,
    LaurentPoly,
    ParseError,
    parse_expression,
    poly_from_json,
)

F = Fraction


def test_basic_arithmetic():
    assert parse_expression("1+2*3") == LaurentPoly.constant(7)
    assert parse_expression("(1+2)*3") == LaurentPoly.constant(9)
    assert parse_expression("2-3-4") == LaurentPoly.constant(-5)


def test_rationals_fall_out_of_division():
    assert parse_expression("1/2") == LaurentPoly.constant(F(1, 2))
    assert parse_expression("-1/3") == LaurentPoly.constant(F(-1, 3))
    assert parse_expression("1/2*w") == LaurentPoly({1: F(1, 2)})


def test_spec_style_inputs():
    assert parse_expression("(w^2-1)/3") == LaurentPoly({2: F(1, 3), 0: F(-1, 3)})
    assert parse_expression("w^-1") == LaurentPoly.w(-1)
    assert parse_expression("w^(-2)") == LaurentPoly.w(-2)
    assert parse_expression("3*w^2 - w + 5") == LaurentPoly(
        {2: F(3), 1: F(-1), 0: F(5)}
    )


def test_unary_minus():
    assert parse_expression("-w^2") == LaurentPoly({2: F(-1)})
    assert parse_expression("-(w-1)") == LaurentPoly({1: F(-1), 0: F(1)})
    assert parse_expression("2--3") == LaurentPoly.constant(5)


def test_division_by_monomial():
    assert parse_expression("(w^3-w)/w") == LaurentPoly({2: F(1), 0: F(-1)})
    assert parse_expression("1/w") == LaurentPoly.w(-1)


def test_power_of_sum():
    assert parse_expression("(w+1)^3") == LaurentPoly(
        {3: F(1), 2: F(3), 1: F(3), 0: F(1)}
    )


def test_parse_errors():
    for bad in ("", "w +", "2 ** 3", "(w", "w^x", "x", "1/(w+1)", "(w+1)^-1", "1/0"):
        with pytest.raises(ParseError):
            parse_expression(bad)


def test_format_parse_roundtrip_random():
    rng = random.Random(99)
    for _ in range(300):
        f = LaurentPoly(
            {
                rng.randint(-5, 8): F(rng.randint(-50, 50), rng.randint(1, 30))
                for _ in range(rng.randint(0, 6))
            }
        )
        assert parse_expression(f.format()) == f


def test_poly_from_json_both_bases():
    mono = poly_from_json(
        {"basis": "monomial", "terms": [{"k": -1, "coeff": "2/1"}]}
    )
    assert mono == LaurentPoly({-1: F(2)})
    binom = poly_from_json(
        {"basis": "binomial", "terms": [{"k": 2, "coeff": "1/2"}]}
    )
    assert binom == BinomialPoly({2: F(1, 2)})
    with pytest.raises(ParseError):
        poly_from_json({"basis": "fourier", "terms": []})
