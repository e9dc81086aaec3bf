from fractions import Fraction

from hypothesis import given, strategies as st

from fermat3.quadfield import QuadElem

rat = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**4)
ds = st.sampled_from([8, 11, 20, 23, 59, 83, 107, 419, 2132])


@st.composite
def elems(draw, d):
    return QuadElem(draw(rat), draw(rat), d)


@given(ds, st.data())
def test_field_laws(d, data):
    a, b, c = (data.draw(elems(d)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * b).norm() == a.norm() * b.norm()
    assert a.trace() == a + a.conj()
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


def test_sqrt_and_integrality():
    r = QuadElem(0, 1, 23)
    assert r * r == -23
    w = QuadElem(Fraction(1, 2), Fraction(1, 2), 23)
    assert w.is_integral() and not QuadElem(Fraction(1, 2), 0, 23).is_integral()
    assert not QuadElem(Fraction(1, 2), Fraction(1, 2), 20).is_integral()
    assert QuadElem(3, 0, 23).is_rational() and QuadElem(3, 0, 23) == 3
    assert w.norm() == 6 and w.trace() == 1
