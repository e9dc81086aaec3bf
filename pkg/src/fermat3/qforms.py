"""Positive definite binary quadratic forms and their class groups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .arith import divisors
from .f3 import count_N3


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def inverse(self) -> "QuadForm":
        return reduce(QuadForm(self.a, -self.b, self.c))

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "disc": self.disc}


def _check_disc(d: int) -> None:
    if d <= 0 or (-d) % 4 not in (0, 1):
        raise ValueError(f"-{d} is not a discriminant")


def reduce(f: QuadForm) -> QuadForm:
    a, b, c = f.a, f.b, f.c
    if f.disc >= 0 or a <= 0:
        raise ValueError("form is not positive definite")
    while True:
        if c < a:
            a, b, c = c, -b, a
            continue
        # bring b into (-a, a]
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            c = c + b * k + a * k * k
            b = b + 2 * a * k
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def _xgcd3(a: int, b: int, c: int) -> tuple[int, int, int, int]:
    """(e, x, y, z) with a*x + b*y + c*z = e = gcd(a, b, c)."""

    def xg(p, q):
        x0, x1, y0, y1 = 1, 0, 0, 1
        while q:
            t = p // q
            p, q = q, p - t * q
            x0, x1 = x1, x0 - t * x1
            y0, y1 = y1, y0 - t * y1
        return p, x0, y0

    e1, u, v = xg(a, b)
    e, s, t = xg(e1, c)
    if e < 0:
        e, s, t = -e, -s, -t
    return e, s * u, s * v, t


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Dirichlet composition followed by reduction."""
    D = f1.disc
    if f2.disc != D:
        raise ValueError("discriminants differ")
    a1, b1, a2, b2 = f1.a, f1.b, f2.a, f2.b
    s = (b1 + b2) // 2
    e, x, y, z = _xgcd3(a1, a2, s)
    a3 = a1 * a2 // (e * e)
    B = (a1 * x * b2 + a2 * y * b1 + z * (b1 * b2 + D) // 2) // e
    B %= 2 * a3
    c3 = (B * B - D) // (4 * a3)
    return reduce(QuadForm(a3, B, c3))


def principal_form(d: int) -> QuadForm:
    _check_disc(d)
    if d % 4 == 0:
        return QuadForm(1, 0, d // 4)
    return QuadForm(1, 1, (d + 1) // 4)


@dataclass(frozen=True)
class ClassGroup:
    d: int
    forms: tuple[QuadForm, ...]

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def identity(self) -> QuadForm:
        return principal_form(self.d)

    def compose(self, f1: QuadForm, f2: QuadForm) -> QuadForm:
        return compose(f1, f2)

    def order(self, f: QuadForm) -> int:
        e, g, k = self.identity, reduce(f), 1
        while g != e:
            g = compose(g, f)
            k += 1
            if k > self.h:
                raise ArithmeticError("order exceeds class number")
        return k


@lru_cache(maxsize=None)
def class_list(d: int) -> ClassGroup:
    """All primitive reduced forms of discriminant -d."""
    _check_disc(d)
    D = -d
    forms = []
    for a in range(1, isqrt(d // 3) + 2):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = QuadForm(a, b, c)
            if c >= a and f.is_reduced() and f.is_primitive():
                forms.append(f)
    return ClassGroup(d, tuple(sorted(forms)))


def class_number(d: int) -> int:
    return class_list(d).h


def prime3_form(d: int) -> QuadForm:
    """Reduced form of the prime above 3 (for d = 2 mod 3)."""
    _check_disc(d)
    if d % 3 != 2:
        raise ValueError("3 does not split: need d = 2 mod 3")
    b = next(b for b in range(12) if (b * b + d) % 12 == 0)
    return reduce(QuadForm(3, b, (b * b + d) // 12))


@lru_cache(maxsize=None)
def prime3_order(d: int) -> int:
    return class_list(d).order(prime3_form(d))


def valid_d(d: int) -> bool:
    return d > 4 and d % 3 == 2 and (-d) % 4 in (0, 1)


@lru_cache(maxsize=None)
def enumerate_Dn(n: int) -> tuple[tuple[int, int], ...]:
    """(d, h(-d)) for all d whose prime above 3 has class order exactly n.

    If the prime above 3 has order n then its n-th power is principal and
    primitive of norm 3^n, so 4*3^n = x^2 + d y^2 with y >= 1; hence d <= 4*3^n.
    """
    out = []
    for d in range(5, 4 * 3**n + 1):
        if valid_d(d) and prime3_order(d) == n:
            out.append((d, class_number(d)))
    return tuple(out)


def verify_relation(n: int) -> dict:
    Dn = enumerate_Dn(n)
    total = sum(h for _, h in Dn)
    expected = 2 if n == 1 else n * count_N3(n)
    cumulative = sum(h for k in divisors(n) for _, h in enumerate_Dn(k))
    ok = total == expected and cumulative == 3**n - 1
    return {
        "n": n,
        "sum": total,
        "expected": expected,
        "cumulative": cumulative,
        "cumulative_expected": 3**n - 1,
        "d_list": [{"d": d, "h": h, "n": n} for d, h in Dn],
        "ok": ok,
    }
