from fractions import Fraction
from math import gcd

import sympy
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import kronecker_symbol

from fermat3.qforms import (QuadForm, class_list, class_number, compose, enumerate_Dn, prime3_form, prime3_order,
                            principal_form, reduce, valid_d, verify_relation)
from fermat3.tables import CLASS_NUMBER_6, CLASS_NUMBER_9, CLASS_NUMBER_12, D_N, RELATION_SUMS


def _fundamental(D: int) -> tuple[int, int]:
    """Write D = D0 f^2 with D0 fundamental."""
    f = 1
    for p, e in sympy.factorint(abs(D)).items():
        f *= p ** (e // 2)
    while True:
        D0 = D // (f * f)
        if D0 % 4 == 1 or (D0 % 4 == 0 and (D0 // 4) % 4 in (2, 3)):
            return D0, f
        for p in sympy.primefactors(f):
            f //= p
            break


def h_analytic(d: int) -> int:
    # Dirichlet class number formula plus the conductor formula
    D0, f = _fundamental(-d)
    n = -D0
    h0 = -Fraction(sum(kronecker_symbol(D0, a) * a for a in range(1, n)), n)
    w0 = {3: 6, 4: 4}.get(n, 2)
    h = h0 * f
    for p in sympy.primefactors(f):
        h *= 1 - Fraction(kronecker_symbol(D0, p), p)
    return int(h / Fraction(w0, 2))


valid = st.integers(5, 3000).filter(valid_d)


@given(valid)
def test_class_number_vs_analytic_formula(d):
    assert class_number(d) == h_analytic(d)


def test_known_small_class_numbers():
    assert class_number(23) == 3 and class_number(8) == 1 and class_number(20) == 2


def test_class_number_lists():
    for want, ds in ((6, CLASS_NUMBER_6), (9, CLASS_NUMBER_9), (12, CLASS_NUMBER_12)):
        assert all(class_number(d) == want for d in ds)


@given(valid, st.data())
def test_composition_group_laws(d, data):
    G = class_list(d)
    f = st.sampled_from(G.forms)
    a, b, c = data.draw(f), data.draw(f), data.draw(f)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, b) == compose(b, a)
    assert compose(a, G.identity) == reduce(a)
    assert compose(a, a.inverse()) == G.identity
    assert compose(a, b).disc == -d


@given(valid)
def test_reduced_forms(d):
    for f in class_list(d).forms:
        assert f.is_reduced() and f.disc == -d and gcd(gcd(f.a, f.b), f.c) == 1
    assert principal_form(d) in class_list(d).forms


@given(st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50), st.integers(-3, 3), st.integers(-3, 3))
def test_reduce_preserves_class(a, b, c, p, q):
    f = QuadForm(a, b, c)
    if f.disc >= 0:
        return
    g = reduce(f)
    assert g.is_reduced() and g.disc == f.disc
    # an SL2 transform reduces to the same form
    if gcd(p, q) != 1:
        return
    r, s = next((r, s) for r in range(-4, 5) for s in range(-4, 5) if p * s - q * r == 1)
    A = a * p * p + b * p * q + c * q * q
    B = 2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s
    C = a * r * r + b * r * s + c * s * s
    assert reduce(QuadForm(A, B, C)) == g


def test_prime3_form():
    f = prime3_form(23)
    assert f.a in (2, 3) and f.disc == -23
    assert prime3_order(23) == 3 and prime3_order(8) == 1


def test_Dn_lists():
    for n, ds in D_N.items():
        assert [d for d, _ in enumerate_Dn(n)] == ds


def test_relation():
    for n, total in RELATION_SUMS.items():
        r = verify_relation(n)
        assert r["ok"] and r["sum"] == total and r["cumulative"] == 3**n - 1
