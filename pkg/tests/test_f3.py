import itertools
import random

import sympy
from hypothesis import given, strategies as st

from fermat3.exact import Poly
from fermat3.f3 import (F3Ext, F3Poly, count_N3, count_irreducible_bruteforce, ell_rank, factor_f3, gcd_f3,
                        irreducibles, is_irreducible, partition_audit, rank_f3, roots_in, smallest_irreducible)
from fermat3.tables import NON_NORMAL_CUBICS, parse_poly

X = sympy.Symbol("x")
f3polys = st.lists(st.integers(0, 2), min_size=1, max_size=9).map(F3Poly)


def sym(f: F3Poly):
    return sympy.Poly(list(reversed(f.c)) or [0], X, modulus=3)


def test_counts_match_bruteforce():
    assert [count_N3(n) for n in range(1, 7)] == [
        count_irreducible_bruteforce(n) for n in range(1, 7)]
    assert [count_N3(n) for n in range(1, 5)] == [3, 3, 8, 18]


@given(f3polys, f3polys)
def test_divmod_and_gcd(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a and (r.is_zero() or r.deg < b.deg)
    g = gcd_f3(a, b)
    assert (a % g).is_zero() and (b % g).is_zero()


@given(st.lists(st.integers(0, 2), min_size=2, max_size=10).filter(lambda c: c[-1] != 0))
def test_irreducibility_vs_sympy(c):
    f = F3Poly(c)
    assert is_irreducible(f) == sym(f).is_irreducible


@given(st.lists(st.integers(0, 2), min_size=2, max_size=14).filter(lambda c: c[-1] != 0), st.integers(0, 5))
def test_factorization_vs_sympy(c, seed):
    f = F3Poly(c)
    facs = factor_f3(f, seed)
    prod = F3Poly([f.lc])
    for g, m in facs:
        assert is_irreducible(g) and g.lc == 1
        for _ in range(m):
            prod = prod * g
    assert prod == f
    want = sorted((sympy.Poly(g, X, modulus=3).monic().degree(), m) for g, m in sympy.factor_list(sym(f).as_expr(), modulus=3)[1])
    assert sorted((g.deg, m) for g, m in facs) == want


def test_smallest_irreducible_is_lex_first():
    for n in range(1, 7):
        f = smallest_irreducible(n)
        assert is_irreducible(f)
        earlier = [g for g in irreducibles(n) if g.c[::-1] < f.c[::-1]] if n < 6 else []
        assert not earlier
    assert smallest_irreducible(2).pretty() == F3Poly([1, 0, 1]).pretty()


@given(st.integers(2, 6), st.data())
def test_extension_field_axioms(n, data):
    F = F3Ext(smallest_irreducible(n))
    el = st.lists(st.integers(0, 2), min_size=n, max_size=n).map(F.elem)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a.frob(n) == a
    assert a ** (3**n) == a
    assert (a + b).frob() == a.frob() + b.frob()
    if not a.is_zero():
        assert a * a.inverse() == F.one()


def test_roots_in_extension():
    F = F3Ext(smallest_irreducible(4))
    for f in irreducibles(2) + irreducibles(4)[:6]:
        rs = roots_in(f, F)
        assert len(rs) == f.deg and len(set(rs)) == f.deg
        for r in rs:
            acc = F.zero()
            for coef in reversed(f.c):
                acc = acc * r + F.elem([coef])
            assert acc.is_zero()


def _rank_oracle(f: F3Poly) -> int:
    # F_3[t]/(reverse f): t is an inverse root; take rank of its Frobenius orbit
    n = f.deg
    rev = sympy.Poly(list(f.c), X, modulus=3)
    rows, t = [], sympy.Poly(X, X, modulus=3)
    for _ in range(n):
        r = t.rem(rev)
        coeffs = [int(v) % 3 for v in reversed(r.all_coeffs())]
        rows.append(coeffs + [0] * (n - len(coeffs)))
        t = (r**3).rem(rev)
    return rank_f3(rows)


def test_ell_rank_vs_independent_oracle():
    for n in (2, 3, 4):
        for f in irreducibles(n):
            if f.c == (0, 1):
                continue
            assert ell_rank([f]) == _rank_oracle(f)


def test_non_normal_cubics():
    bad = sorted(f.pretty() for f in irreducibles(3) if ell_rank([f]) < 3)
    assert bad == sorted(F3Poly.from_poly(parse_poly(s)).pretty() for s in NON_NORMAL_CUBICS)


@given(st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), min_size=1, max_size=6))
def test_rank_vs_sympy(rows):
    # rank over F_3 via row echelon on sympy's GF(3) domain
    M = sympy.Matrix(rows)
    from sympy.polys.matrices import DomainMatrix
    dm = DomainMatrix.from_Matrix(M).convert_to(sympy.GF(3))
    assert rank_f3(rows) == dm.rank()


def test_partition_audit():
    from fermat3.cmfloat import ring_class_poly
    from fermat3.qforms import enumerate_Dn
    for n in (1, 2, 3):
        polys = {d: F3Poly.from_poly(ring_class_poly(d)) for d, _ in enumerate_Dn(n)}
        rep = partition_audit(n, polys)
        assert rep["ok"], rep["problems"]
        assert rep["total"] == rep["expected"]


def test_partition_audit_detects_overlap():
    f = irreducibles(2)[0]
    rep = partition_audit(2, {20: f, 32: f, 35: irreducibles(2)[1]})
    assert not rep["ok"]


def test_json_roundtrip():
    f = F3Poly([2, 0, 1, 1])
    assert F3Poly.parse(f.to_json()) == f
    assert F3Poly.from_poly(Poly([5, 0, 4, 1])) == F3Poly([2, 0, 1, 1])
