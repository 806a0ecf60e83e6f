import json
import random

import pytest

from numpoly import (
    DomainError,
    FalsificationError,
    FinitePresentation,
    ShapeError,
    UnsupportedPresentationError,
    aq_low,
    aq_low_polynomial_over_field,
    en_presentation_check,
    idempotent_truncation,
    invert_in_quotient,
    kahler_rank,
    truncation_tower,
)
from numpoly.presentations import (
    reduce_structure_table,
    serialize_structure_table,
    _tensor_tables,
)


def frobenius_truncation(p, k):
    """Z/p^k[x]/(x^p - x)."""
    return FinitePresentation.univariate(p, k, [0, -1] + [0] * (p - 2) + [1])


def nilpotent_control(p, k):
    return FinitePresentation.univariate(p, k, [0] * p + [1])


# -- presentations and the wire format ------------------------------------------


def test_wire_format_roundtrip():
    pres = FinitePresentation.build(
        3,
        2,
        ("S",),
        [{(1, 1): 1, (3, 0): -1}],
        unit_v=True,
    )
    data = pres.to_json()
    assert data["p"] == 3 and data["unit_v"] is True
    assert FinitePresentation.from_json(data) == pres
    # JSON itself is stable through a dump/load cycle
    assert FinitePresentation.from_json(json.loads(json.dumps(data))) == pres


def test_v_terms_need_the_unit_flag():
    with pytest.raises(UnsupportedPresentationError):
        FinitePresentation.build(3, 2, ("S",), [{(1, 1): 1}])


def test_mixed_relation_rejected():
    pres = FinitePresentation.build(
        3, 2, ("x", "y"), [{(1, 1, 0): 1}, {(0, 3, 0): 1}]
    )
    with pytest.raises(UnsupportedPresentationError):
        kahler_rank(pres)


def test_too_many_relations_is_a_shape_error():
    pres = FinitePresentation.build(3, 2, ("x",), [{(3,): 1}, {(1,): 1}])
    with pytest.raises(ShapeError):
        kahler_rank(pres)


# -- Jacobian certificates --------------------------------------------------------


def test_kahler_unit_jacobian():
    verdict = kahler_rank(FinitePresentation.univariate(3, 2, [0, -1, 0, 1]))
    assert verdict.zero
    assert list(verdict.factors[0].inverse) == [8, 0, 6]


def test_kahler_nilpotent_jacobian():
    verdict = kahler_rank(FinitePresentation.univariate(3, 2, [0, 0, 0, 1]))
    assert not verdict.zero
    # cokernel of multiplication by 3x^2 on Z/9{1, x, x^2}
    assert verdict.omega_exponents == (1, 2, 2)
    assert verdict.factors[0].snf is not None


def test_kahler_over_prime_field():
    verdict = kahler_rank(FinitePresentation.univariate(3, 1, [0, -1, 0, 1]))
    assert verdict.zero


def test_kahler_zero_matches_determinant_inversion():
    rng = random.Random(31)
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        k = rng.randint(1, 3)
        degree = rng.randint(1, 4)
        coeffs = [rng.randrange(p**k) for _ in range(degree)] + [1]
        pres = FinitePresentation.univariate(p, k, coeffs)
        verdict = kahler_rank(pres)
        jacobian = {
            e - 1: e * c for e, c in enumerate(coeffs) if e and (e * c) % p**k
        }
        inversion = invert_in_quotient(jacobian or {0: 0}, pres)
        assert verdict.zero == inversion.is_unit


def test_kahler_free_generator_gives_free_summand():
    pres = FinitePresentation.build(3, 2, ("x", "y"), [{(3, 0): 1, (1, 0): -1}])
    verdict = kahler_rank(pres.padded())
    assert not verdict.zero
    assert verdict.free_rank == 1 and "y" in verdict.free_generators


def test_kahler_tensor_product_of_etale_factors():
    pres = idempotent_truncation(3, 2, 2)
    verdict = kahler_rank(pres)
    assert verdict.zero and len(verdict.factors) == 3


# -- low-degree cotangent modules ---------------------------------------------------


def test_aq_vanishes_for_etale():
    pres = FinitePresentation.univariate(3, 1, [0, -1, 0, 1])
    aq0, aq1 = aq_low(pres)
    assert aq0.is_zero and aq1.is_zero


def test_aq_rational_polynomial_ring():
    aq0, aq1 = aq_low_polynomial_over_field(1, 1)
    assert aq0.free_rank == 1 and not aq0.is_zero
    assert aq1.is_zero


def test_aq_nonetale_control():
    pres = FinitePresentation.univariate(3, 2, [0, 0, 0, 1])
    aq0, aq1 = aq_low(pres, module="base")
    assert not aq1.is_zero
    aq0_self, aq1_self = aq_low(pres, module="self")
    assert not aq1_self.is_zero and not aq0_self.is_zero


def test_aq_base_needs_vanishing_relations():
    pres = FinitePresentation.univariate(3, 2, [1, 0, 0, 1])  # x^3 + 1
    with pytest.raises(UnsupportedPresentationError):
        aq_low(pres, module="base")


def test_aq_agrees_with_jacobian_criterion():
    rng = random.Random(47)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        k = rng.randint(1, 3)
        degree = rng.randint(1, 4)
        coeffs = [rng.randrange(p**k) for _ in range(degree)] + [1]
        pres = FinitePresentation.univariate(p, k, coeffs)
        zero = kahler_rank(pres).zero
        aq0, aq1 = aq_low(pres)
        assert (aq0.is_zero and aq1.is_zero) == zero


# -- towers -----------------------------------------------------------------------


def test_tower_levels_all_etale():
    report = truncation_tower(3, 2, 1)
    assert report.ok
    assert [lv.k for lv in report.levels] == [1, 2]
    assert all(lv.factors_etale for lv in report.levels)
    assert report.levels[1].reduction_ok


def test_tower_p2_idempotent_inverse():
    # Z/8[s]/(s^2 - s): the Jacobian 2s - 1 squares to 1
    pres = frobenius_truncation(2, 3)
    verdict = kahler_rank(pres)
    assert verdict.zero
    inverse = list(verdict.factors[0].inverse)
    assert inverse == [7, 2]  # 2s - 1 mod 8


def test_tower_level_one_is_prime_field():
    report = truncation_tower(5, 1, 0)
    assert report.ok and report.levels[0].factors_etale


def test_structure_tables_reduce_byte_identically():
    for p, l in ((2, 2), (3, 1)):
        tables = {k: _tensor_tables(p, l, k) for k in (1, 2, 3)}
        for k in (1, 2):
            reduced = reduce_structure_table(tables[k + 1], p**k)
            assert serialize_structure_table(reduced) == serialize_structure_table(
                tables[k]
            )


def test_tower_rejects_bad_arguments():
    with pytest.raises(DomainError):
        truncation_tower(3, 0, 1)
    with pytest.raises(DomainError):
        truncation_tower(3, 2, -1)


# -- the cooperation relation certificate -------------------------------------------


def test_en_series_p3_k2():
    cert = en_presentation_check(3, 2, 1, 1)
    assert cert.verified
    assert dict(cert.series) == {(0, 0): 1, (2, -2): 3}  # 1 + 3u


def test_en_series_p2_k3_j2():
    cert = en_presentation_check(2, 3, 1, 2)
    assert dict(cert.series) == {(0, 0): 1, (1, -3): 2, (2, -6): 4}


def test_en_trivial_at_k1():
    cert = en_presentation_check(5, 1, 1, 1)
    assert cert.verified and dict(cert.series) == {(0, 0): 1}


def test_en_iteration_count():
    assert en_presentation_check(3, 4, 1, 2).iterations == 4
    assert en_presentation_check(3, 4, 2, 2).iterations == 2
    assert en_presentation_check(3, 5, 3, 1).iterations == 2


def test_en_rejects_bad_arguments():
    with pytest.raises(DomainError):
        en_presentation_check(3, 0, 1, 1)
    with pytest.raises(DomainError):
        en_presentation_check(3, 2, 1, 0)


def test_en_passes_grid():
    for p in (2, 3):
        for k in range(1, 5):
            for j in range(1, 4):
                assert en_presentation_check(p, k, 1, j).verified
