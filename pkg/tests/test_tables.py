import pytest
from hypothesis import given, strategies as st

from fermat3.exact import Poly
from fermat3.tables import (COEFF_5219, COEFF_5219_FACTORS, M_419, P_D, Q_D, Q_D_MOD3, parse_poly)
from fermat3.qforms import class_number


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=15))
def test_parse_roundtrip(c):
    p = Poly(c)
    if p.is_zero():
        return
    assert parse_poly(p.pretty().replace("*", "")) == p


def test_parse_braces():
    assert parse_poly("x^{12}-44x^{11}+729") == Poly([729] + [0] * 10 + [-44, 1])
    with pytest.raises(ValueError):
        parse_poly("x^2+?")


def test_degrees_match_class_numbers():
    for d, s in P_D.items():
        assert parse_poly(s).deg == 2 * class_number(d)
    for d, s in Q_D.items():
        assert parse_poly(s).deg == 2 * class_number(d)
    assert len(M_419["coeffs"]) == class_number(419)
    for d, (k, _) in Q_D_MOD3.items():
        assert k == class_number(d)


def test_coefficient_factorization():
    prod = 1
    for p, e in COEFF_5219_FACTORS.items():
        prod *= p**e
    assert -prod == COEFF_5219
