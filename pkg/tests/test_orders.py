import pytest

from impactzeta.building import BasinKind
from impactzeta.errors import ArityMismatch
from impactzeta.orders import (
    all_cases,
    check_main_theorem,
    check_zeta_recurrence,
    classify_type,
    contribution,
    eta,
    extension_case,
    full_zeta,
    numerator_poly,
    principal_zeta,
    unit_index,
    zeta_denominator,
)
from impactzeta.poly import ONE, Q, RationalFn, q_pow, series_expand, x_pow
from impactzeta.report import all_passed

RAM = extension_case(BasinKind.RAMIFIED)
UNRAM = extension_case(BasinKind.UNRAMIFIED)
SPLIT = extension_case(BasinKind.SPLIT)


def test_case_vectors():
    assert (RAM.e_vec, RAM.f_vec, RAM.g) == ((2,), (1,), 1)
    assert (UNRAM.e_vec, UNRAM.f_vec, UNRAM.g) == ((1,), (2,), 1)
    assert (SPLIT.e_vec, SPLIT.f_vec, SPLIT.g) == ((1, 1), (1, 1), 2)


def test_translation_vector_contributes_two():
    for case in all_cases():
        assert contribution(case, case.e_vec if case.g == 2 else case.e_vec[0]) == 2


def test_unit_index_values():
    assert unit_index(RAM, 3) == q_pow(3)
    assert unit_index(UNRAM, 1) == Q + 1
    assert unit_index(SPLIT, 2) == (Q - 1) * Q
    for case in all_cases():
        assert unit_index(case, 0) == ONE


def test_classify_low_not_occurring():
    desc = classify_type(RAM, 2, 3)
    assert desc.is_low and not desc.occurs
    assert desc.count_expr.is_zero()


def test_classify_low_occurring():
    desc = classify_type(RAM, 2, 2)
    assert desc.is_low and desc.occurs
    assert desc.count_expr == Q
    assert desc.contribution == 2


def test_classify_high_split():
    desc = classify_type(SPLIT, 1, (1, 2))
    assert not desc.is_low and desc.occurs
    assert desc.count_expr == Q - 1
    assert desc.contribution == 3


def test_classify_unramified_low():
    desc = classify_type(UNRAM, 2, 1)
    assert desc.is_low and desc.occurs
    assert desc.count_expr == Q
    assert desc.contribution == 2


def test_classify_arity():
    with pytest.raises(ArityMismatch):
        classify_type(RAM, 1, (1, 2))
    with pytest.raises(ArityMismatch):
        classify_type(SPLIT, 1, 2)


def test_eta_accessor():
    assert eta(3) == 3
    assert eta((2, 5)) == 2


def test_principal_zeta_examples():
    one_minus_x = ONE - x_pow(1)
    assert principal_zeta(RAM, 1) == RationalFn(
        ONE - x_pow(1) + Q * x_pow(2), one_minus_x
    )
    assert principal_zeta(UNRAM, 1) == RationalFn(
        ONE + Q * x_pow(2), ONE - x_pow(2)
    )
    assert principal_zeta(SPLIT, 0) == RationalFn(ONE, one_minus_x**2)


def test_full_zeta_numerators():
    assert full_zeta(RAM, 2).numerator == ONE + Q * x_pow(2) + q_pow(2) * x_pow(4)
    assert full_zeta(UNRAM, 1).numerator == ONE + x_pow(1) + Q * x_pow(2)
    assert full_zeta(SPLIT, 1).numerator == ONE - x_pow(1) + Q * x_pow(2)


def test_numerator_poly_closed_forms():
    assert numerator_poly(RAM, 2) == ONE + Q * x_pow(2) + q_pow(2) * x_pow(4)
    assert numerator_poly(UNRAM, 0) == ONE
    assert numerator_poly(SPLIT, 0) == ONE
    assert numerator_poly(SPLIT, 2) == (
        ONE
        - x_pow(1)
        + Q * x_pow(2)
        - Q * x_pow(3)
        + q_pow(2) * x_pow(4)
    )


def test_numerator_degree_and_leading_coefficient():
    for case in all_cases():
        for n in range(9):
            num = full_zeta(case, n).numerator
            assert num.x_degree() == 2 * n
            assert num.coefficient(n, 2 * n) == 1


def test_base_case_all_ideals_principal():
    for case in all_cases():
        rec = full_zeta(case, 0)
        assert rec.full == rec.principal


def test_series_counts_are_nonnegative():
    for case in all_cases():
        for n in range(5):
            prefix = series_expand(full_zeta(case, n).full, 10)
            for coeff in prefix.coefficients:
                assert all(c > 0 for _, _, c in coeff.terms), (case.tag, n)


def test_recurrence_and_main_theorem():
    for case in all_cases():
        assert all_passed(check_zeta_recurrence(case, 8))
        assert all_passed(check_main_theorem(case, 8))


def test_full_zeta_equals_basin_genfun():
    from impactzeta.genfun import basin_genfun_q

    for case in all_cases():
        for n in range(9):
            assert full_zeta(case, n).full == basin_genfun_q(case.tag, n)


def test_denominators():
    assert zeta_denominator(RAM) == ONE - x_pow(1)
    assert zeta_denominator(UNRAM) == ONE - x_pow(2)
    assert zeta_denominator(SPLIT) == (ONE - x_pow(1)) ** 2
