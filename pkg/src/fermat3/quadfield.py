"""Exact arithmetic in K = Q(sqrt(-d))."""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class QuadElem:
    """a + b*sqrt(-d) with rational a, b."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 1):
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    def _c(self, o) -> "QuadElem":
        if isinstance(o, QuadElem):
            if o.d != self.d:
                raise ValueError("different quadratic fields")
            return o
        return QuadElem(o, 0, self.d)

    def __add__(self, o):
        o = self._c(o)
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return QuadElem(self.a * o.a - self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a + self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in K")
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = QuadElem(1, 0, self.d), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        return isinstance(o, QuadElem) and (self.a, self.b, self.d) == (o.a, o.b, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        """Membership in the maximal order (trace and norm integral)."""
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def __repr__(self):
        return self.pretty()

    def pretty(self) -> str:
        if self.b == 0:
            return str(self.a)
        den = lcm(self.a.denominator, self.b.denominator)
        A, Bc = self.a * den, self.b * den
        sign = "+" if Bc > 0 else "-"
        Bs = "" if abs(Bc) == 1 else f"{abs(Bc)}*"
        core = f"{A} {sign} {Bs}sqrt(-{self.d})" if A else f"{'-' if Bc < 0 else ''}{Bs}sqrt(-{self.d})"
        return core if den == 1 else f"({core})/{den}"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "d": self.d}

