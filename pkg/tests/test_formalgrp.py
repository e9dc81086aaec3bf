from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fermat3.ellipt import CurvePoint, ec_add
from fermat3.formalgrp import (BiSeries, FE_series, TruncSeries, associative, c_coefficients, commutative,
                               congruence_mod9, congruence_mod27, formal_report, i_series, inverse_check,
                               small_factorization, w_from_T, w_series)
from fermat3.padic3 import Qq, Z3, v3
from fermat3.tables import W_SERIES

ORDER = 24


def test_w_coefficients():
    w = w_series(ORDER)
    assert [w[3 * k + 3] for k in range(len(W_SERIES))] == W_SERIES
    assert all(w[k] == 0 for k in range(ORDER + 1) if k % 3)


def test_w_matches_T_series():
    assert w_from_T(ORDER) == w_series(ORDER)


def test_inverse_series():
    i = i_series(12)
    assert [i[k] for k in range(12)] == [0, -1, 0, 0, -9, 0, 0, -162, 0, 0, -3402, 0]


def test_c_coefficients_integral():
    cs = c_coefficients(16)
    assert len(cs) == 16
    assert cs[:len(W_SERIES) - 1] == [W_SERIES[k] // 3**k for k in range(1, len(W_SERIES))]
    fac = small_factorization(2 * 3 * 3 * 89)
    assert fac == {2: 1, 3: 2, 89: 1}


def test_group_law_checks():
    assert congruence_mod9(ORDER) and congruence_mod27(ORDER)
    assert commutative(ORDER)
    assert associative(12) and inverse_check(12)
    assert formal_report(12, 12).ok


@settings(max_examples=25)
@given(st.lists(st.integers(-40, 40), min_size=1, max_size=8))
def test_series_inverse(c):
    c = [1] + c
    s = TruncSeries(c, 10)
    assert (s * s.inverse()) == TruncSeries([1], 10)


def _w_3adic(z: Qq) -> Qq:
    w = z * z * z
    for _ in range(60):
        w = z * z * z + 9 * w * w - 27 * w * w * w
    return w


def _eval_bi(F: BiSeries, a: Fraction, b: Fraction) -> Fraction:
    return sum((c * a**i * b**j for (i, j), c in F.c.items()), Fraction(0))


@settings(max_examples=15)
@given(st.integers(-50, 50).filter(lambda k: k), st.integers(-50, 50).filter(lambda k: k))
def test_formal_law_matches_point_addition(a, b):
    # with z = 3a: X = z/w, Y = 1/w on E, and the truncation error has valuation > ORDER
    prec = 60
    z1, z2 = 3 * a, 3 * b
    pts = []
    for z in (z1, z2):
        zq = Qq.from_int(Z3, z, prec)
        w = _w_3adic(zq)
        pts.append(CurvePoint(zq / w, w.inverse()))
    if pts[0] == pts[1]:
        return
    S = ec_add(*pts)
    zs = S.x / S.y
    F = _eval_bi(FE_series(ORDER), Fraction(z1), Fraction(z2))
    diff = zs - Qq.from_rational(Z3, F, prec)
    assert diff.is_zero() or diff.valuation() >= ORDER + 1


def test_order_guard():
    with pytest.raises(ValueError):
        FE_series(2)
