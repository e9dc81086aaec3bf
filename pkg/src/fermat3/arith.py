"""Small integer helpers shared by the modular layers."""

from __future__ import annotations

from functools import lru_cache

import gmpy2


def divisors(n: int) -> list[int]:
    out = [k for k in range(1, int(n**0.5) + 1) if n % k == 0]
    return sorted(set(out + [n // k for k in out]))


def mobius(n: int) -> int:
    m, k, sign = n, 2, 1
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            sign = -sign
        k += 1
    if m > 1:
        sign = -sign
    return sign


def balanced(r: int, m: int) -> int:
    """Representative of r mod m in (-m/2, m/2]."""
    r %= m
    return r - m if 2 * r > m else r


@lru_cache(maxsize=None)
def prime_list(bits: int, count: int) -> tuple[int, ...]:
    """The `count` largest primes below 2**bits, descending."""
    out = []
    p = 1 << bits
    while len(out) < count:
        p -= 1
        while not gmpy2.is_prime(p):
            p -= 1
        out.append(p)
    return tuple(out)


def primes_below(bits: int):
    """Endless descending stream of primes below 2**bits."""
    count = 16
    done = 0
    while True:
        ps = prime_list(bits, count)
        yield from ps[done:]
        done = count
        count *= 2


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = ((r2 - r1) * int(gmpy2.invert(m1, m2))) % m2
    return r1 + m1 * t, m1 * m2


def int_sqrt_mod_prime(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if gmpy2.legendre(a, p) != 1:
        return None
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while gmpy2.legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r
