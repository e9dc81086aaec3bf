import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from fermat3.cmfloat import (CertificationError, ComplexFix, eta, f_of, g_of, j_of, modular_identity_suite,
                             ring_class_poly, select_w)
from fermat3.exact import Poly
from fermat3.padic3 import pd_padic

B = 128
taus = st.tuples(st.floats(-0.5, 0.5), st.floats(0.8, 3.0)).map(lambda t: mpmath.mpc(*t))


def contains(fix: ComplexFix, z, slack=4) -> bool:
    s = mpmath.mpf(2) ** fix.B
    dz = (mpmath.mpc(fix.re, fix.im) - mpmath.mpc(z) * s)
    return abs(dz.real) + abs(dz.imag) <= fix.err + slack


@settings(max_examples=20)
@given(taus)
def test_j_vs_mpmath_kleinj(tau):
    with mpmath.workprec(B + 64):
        want = 1728 * mpmath.kleinj(tau)
        got = j_of(tau, B).to_mpc()
        assert abs(got - want) <= abs(want) * mpmath.mpf(2) ** (-B + 40) + mpmath.mpf(2) ** (-B + 40)


@settings(max_examples=20)
@given(taus)
def test_eta_vs_mpmath(tau):
    with mpmath.workprec(B + 64):
        q = mpmath.exp(2j * mpmath.pi * tau)
        want = mpmath.exp(2j * mpmath.pi * tau / 24) * mpmath.qp(q)
        r = eta(tau, B)
        assert contains(r, want)


@given(st.integers(-2**40, 2**40), st.integers(-2**40, 2**40), st.integers(-2**40, 2**40),
       st.integers(-2**40, 2**40))
def test_interval_arithmetic_contains_exact(a, b, c, d):
    x = ComplexFix(a, b, 3, 40)
    y = ComplexFix(c, d, 5, 40)
    za, zb = mpmath.mpc(a, b) / 2**40, mpmath.mpc(c, d) / 2**40
    with mpmath.workprec(200):
        assert contains(x + y, za + zb)
        assert contains(x * y, za * zb)


def test_weight_zero_transformation():
    # j is invariant under tau -> -1/tau
    tau = mpmath.mpc(0.1, 1.3)
    with mpmath.workprec(B + 64):
        d = j_of(tau, B) - j_of(-1 / tau, B)
    assert d.contains_zero()


def test_small_class_polynomials():
    assert ring_class_poly(8) == Poly([-8000, 1])
    assert ring_class_poly(11) == Poly([32768, 1])
    assert ring_class_poly(20) == Poly.from_desc([1, -1264000, -681472000])
    assert ring_class_poly(23) == Poly.from_desc([1, 3491750, -5151296875, 12771880859375])


def _class_poly_mpmath(d: int) -> Poly:
    from fermat3.qforms import class_list
    with mpmath.workprec(600):
        roots = [1728 * mpmath.kleinj(mpmath.mpc(-f.b, mpmath.sqrt(d)) / (2 * f.a)) for f in class_list(d).forms]
        c = [mpmath.mpc(1)]
        for r in roots:
            c = [mpmath.mpc(0)] + c
            for i in range(len(c) - 1):
                c[i] -= r * c[i + 1]
        return Poly([int(mpmath.nint(v.real)) for v in c])


@pytest.mark.parametrize("d", [35, 44, 59, 83, 104, 107])
def test_class_polynomials_vs_kleinj(d):
    assert ring_class_poly(d) == _class_poly_mpmath(d)


def test_f_and_g_at_cm_point_are_periodic_images():
    pt = select_w(23)
    with mpmath.workprec(B + 64):
        w = pt.w(B + 64)
        f = f_of(w, B)
        val = ComplexFix.from_int(0, B)
        for c in reversed(pd_padic(23).c):
            val = val * f + int(c)
    assert abs(val.to_mpc()) < 1e-20


@pytest.mark.parametrize("d", [23, 59, 83])
def test_identity_suite(d):
    rep = modular_identity_suite(d, 256, pd_padic(d))
    assert rep["ok"], [c for c in rep["checks"] if not c["ok"]]


def test_select_w_rejects():
    with pytest.raises(ValueError):
        select_w(7)


def test_near_real_axis_raises():
    with pytest.raises((CertificationError, ValueError)):
        eta(mpmath.mpc(0, 1e-6), 64)
