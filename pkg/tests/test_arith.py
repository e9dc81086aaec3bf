import gmpy2
from hypothesis import given, strategies as st

from fermat3.arith import balanced, crt_pair, divisors, int_sqrt_mod_prime, mobius, prime_list


def test_divisors_and_mobius():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@given(st.integers(1, 5000))
def test_mobius_sum_over_divisors(n):
    assert sum(mobius(k) for k in divisors(n)) == (1 if n == 1 else 0)


@given(st.integers(-10**6, 10**6), st.integers(2, 10**4))
def test_balanced_range(r, m):
    b = balanced(r, m)
    assert (b - r) % m == 0 and -m < 2 * b <= m


def test_prime_list_descending():
    ps = prime_list(31, 5)
    assert all(gmpy2.is_prime(p) and p < 2**31 for p in ps)
    assert list(ps) == sorted(ps, reverse=True)


@given(st.integers(0, 1008), st.integers(0, 1012))
def test_crt(a, b):
    x, m = crt_pair(a, 1009, b, 1013)
    assert m == 1009 * 1013 and x % 1009 == a and x % 1013 == b


@given(st.integers(1, 10**5))
def test_sqrt_mod_prime(a):
    p = 1000003
    r = int_sqrt_mod_prime(a, p)
    if r is None:
        assert gmpy2.legendre(a, p) == -1
    else:
        assert r * r % p == a % p
