"""One test per acceptance criterion; each prints a PASS or FAIL line."""

from fermat3 import acceptance


def _check(result):
    print(result.line())
    assert result.ok, result.details


def test_criterion_01_low_resultants():
    _check(acceptance.c01_low_resultants())


def test_criterion_02_third_resultant():
    _check(acceptance.c02_third_resultant())


def test_criterion_03_structure():
    _check(acceptance.c03_structure())


def test_criterion_04_class_number_relation():
    _check(acceptance.c04_relation())


def test_criterion_05_periodic_minimal_polynomials():
    _check(acceptance.c05_pd())


def test_criterion_06_q_minimal_polynomials():
    _check(acceptance.c06_qd())


def test_criterion_07_class_polynomials():
    _check(acceptance.c07_class_polys())


def test_criterion_08_point_QK():
    _check(acceptance.c08_qk())


def test_criterion_09_nontriviality_criteria():
    _check(acceptance.c09_criteria())


def test_criterion_10_formal_group():
    _check(acceptance.c10_formal())


def test_criterion_11_reduction_demo():
    _check(acceptance.c11_demo())


def test_criterion_12_ell_rank():
    _check(acceptance.c12_ell_rank())


def test_criterion_13_properties():
    _check(acceptance.c13_properties())


def test_criterion_14_modular_identities():
    _check(acceptance.c14_modular())
