from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from fermat3.exact import (BiPoly, Poly, build_Fd, build_Gd, cube_graeffe, cube_twist_cofactor, g_bivariate, gcd_poly,
                           twist_identity_check, poly_sqrt, resultant, sylvester_resultant)

X = sympy.Symbol("x")
small = st.lists(st.integers(-20, 20), min_size=1, max_size=6)


def to_sym(p: Poly):
    return sum(sympy.Rational(c) * X**k for k, c in enumerate(p.c))


def from_sym(e) -> Poly:
    return Poly([int(c) for c in reversed(sympy.Poly(e, X).all_coeffs())])


@given(small, small)
def test_ring_ops_match_sympy(a, b):
    A, B = Poly(a), Poly(b)
    assert sympy.expand(to_sym(A * B) - to_sym(A) * to_sym(B)) == 0
    assert sympy.expand(to_sym(A + B) - to_sym(A) - to_sym(B)) == 0


@given(small, st.lists(st.integers(-20, 20), min_size=2, max_size=5).filter(lambda c: c[-1] != 0))
def test_divmod(a, b):
    A, B = Poly(a), Poly(b)
    q, r = A.divmod(B)
    assert q * B + r == A and (r.is_zero() or r.deg < B.deg)


def _euclid_resultant(A: Poly, B: Poly):
    # Res(A, B) = (-1)^(mn) lc(B)^(m - deg r) Res(B, r) with r = A mod B
    if B.deg == 0:
        return B.lc ** A.deg
    r = A.divmod(B)[1]
    if r.is_zero():
        return 0
    m, n = A.deg, B.deg
    return (-1) ** (m * n) * B.lc ** (m - r.deg) * _euclid_resultant(B, r)


@given(small, small)
def test_univariate_resultant_vs_euclid(a, b):
    A, B = Poly(a), Poly(b)
    if A.deg < 1 or B.deg < 1:
        return
    assert sylvester_resultant(A, B) == _euclid_resultant(A, B)
    assert sylvester_resultant(B, A) == (-1) ** (A.deg * B.deg) * sylvester_resultant(A, B)


def test_resultant_sign():
    # Sylvester determinant of (x - y, y - 5) in y is 5 - x
    x, y = BiPoly.var("x"), BiPoly.var("y")
    assert resultant(x - y, y - 5, "y") == Poly([5, -1])


def test_g_and_second_resultant_vs_sympy():
    x, x1 = sympy.symbols("x x1")
    g = lambda a, b: (b**2 + 3 * b + 9) * a**3 - (b + 6) ** 3
    want = sympy.resultant(g(x, x1), g(x1, x), x1)
    gb = g_bivariate("x", "x1")
    got = resultant(gb, g_bivariate("x1", "x").aligned(("x", "x1")), "x1")
    assert sympy.expand(to_sym(got).subs(X, x) - want) == 0


def test_gcd_and_sqrt():
    a = Poly.from_roots([1, 2, 3])
    b = Poly.from_roots([2, 3, 7])
    assert gcd_poly(a, b) == Poly.from_roots([2, 3])
    B, c = poly_sqrt(Poly.from_roots([1, 1, -2, -2]) * 5)
    assert B == Poly.from_roots([1, -2]) and c == 5


def test_cube_graeffe_roots():
    p = Poly.from_roots([2, -1, 3])
    assert cube_graeffe(p) == Poly.from_roots([8, -1, 27])


def test_cube_twist_cofactor():
    # p(w x) p(w^2 x) for p = x - a is x^2 + a x + a^2
    assert cube_twist_cofactor(Poly([-5, 1])) == Poly([25, 5, 1])


def test_build_Fd_Gd_vs_sympy():
    H = Poly([5, -3, 1])
    h = to_sym(H)
    t = X**3
    F = sympy.expand(sympy.cancel((t - 27) ** 2 * h.subs(X, t * (t - 24) ** 3 / (t - 27))))
    G = sympy.expand(sympy.cancel((t - 27) ** 6 * h.subs(X, t * (t + 216) ** 3 / (t - 27) ** 3)))
    assert build_Fd(H) == from_sym(F)
    assert build_Gd(H) == from_sym(G)


def test_eisenstein_identity():
    assert twist_identity_check()


def test_fraction_coefficients():
    p = Poly([Fraction(1, 2), 0, 1])
    assert not p.is_integral() and p.content() == Fraction(1, 2)
